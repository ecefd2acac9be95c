"""Exact integer linear algebra."""

from .smith import (
    CokernelInvariants,
    DimensionError,
    IntMatrix,
    SmithForm,
    as_int_matrix,
    characteristic_polynomial,
    cokernel_invariants,
    determinant,
    format_matrix,
    identity_matrix,
    int_matrix,
    mat_power,
    mat_sum_powers,
    matmul,
    matvec,
    smith_normal_form,
    solve_integer,
    zero_matrix,
)

__all__ = [
    'CokernelInvariants',
    'DimensionError',
    'IntMatrix',
    'SmithForm',
    'as_int_matrix',
    'characteristic_polynomial',
    'cokernel_invariants',
    'determinant',
    'format_matrix',
    'identity_matrix',
    'int_matrix',
    'mat_power',
    'mat_sum_powers',
    'matmul',
    'matvec',
    'smith_normal_form',
    'solve_integer',
    'zero_matrix',
]
