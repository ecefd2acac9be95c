"""Random instances of the case templates, with explicit inverse witnesses.

Every instance is built in its adapted basis: the invariant factors are
twisted by random Nielsen automorphisms, witness words are random reduced
words of length at most ``max_word``, and the inverse is written down from
the template rather than searched for. Instances are deterministic in the
seed.

Parameter ranges used when a parameter is not given:

* A: ``k`` in 1..3, ``v_rank`` in 0..2
* B: ``m`` in 2..4, ``k`` in 1..3, ``rank`` in 0..2
* D: ``n`` in 1..4, ``k`` in 1..3, ``v_rank`` and ``w_rank`` in 0..2, with
  ``w_rank >= 1`` when ``k = 1`` and ``v_rank = 0``
* E: ``(m, n)`` in (2, 3), (2, 5), (3, 4); ``k`` in 1..2; ranks in 0..1
"""

import logging
import random
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from torus_tool.morphisms import GroupMorphism, MorphismError, apply, compose, identity_morphism, substitution
from torus_tool.words import Basis, Word, rename_letters

from .certificate import CaseA, CaseB, CaseD, CaseE, CertificateError, SplittingCertificate
from .verifier import case_e_conjugator

logger = logging.getLogger(__name__)

V_NAMES = 'pquv'
W_NAMES = 'xyzw'

Instance = Tuple[GroupMorphism, SplittingCertificate]


def random_word(rng: random.Random, basis: Basis, letters: Sequence[str], length: int) -> Word:
    """Uniform-ish random reduced word of exactly ``length`` letters from ``letters``."""
    if not letters or length <= 0:
        return Word.identity(basis)
    syllables: List[Tuple[int, int]] = []
    previous = None
    for _ in range(length):
        choices = [(basis.index(name), e) for name in letters for e in (1, -1)
                   if previous is None or (basis.index(name), -e) != previous]
        token = rng.choice(choices)
        syllables.append(token)
        previous = token
    return Word(basis, tuple(syllables))


def random_factor_automorphism(rng: random.Random, basis: Basis, letters: Sequence[str],
                               moves: int = 3) -> GroupMorphism:
    """Product of random Nielsen moves on ``letters``, identity elsewhere, with witness."""
    theta = identity_morphism(basis)
    letters = list(letters)
    if not letters:
        return theta
    for _ in range(moves):
        x = rng.choice(letters)
        X = Word.letter(basis, x)
        others = [name for name in letters if name != x]
        kind = rng.choice(['invert', 'swap', 'right', 'left'] if others else ['invert'])
        if kind == 'invert':
            move = substitution(basis, {x: ~X}, {x: ~X})
        elif kind == 'swap':
            y = rng.choice(others)
            Y = Word.letter(basis, y)
            move = substitution(basis, {x: Y, y: X}, {x: Y, y: X})
        else:
            y = rng.choice(others)
            e = rng.choice([1, -1])
            Y = Word.letter(basis, y, e)
            if kind == 'right':
                move = substitution(basis, {x: X * Y}, {x: X * ~Y})
            else:
                move = substitution(basis, {x: Y * X}, {x: ~Y * X})
        theta = compose(move, theta)
    return theta


def _block(names: str, index: Optional[int], rank: int) -> Tuple[str, ...]:
    suffix = '' if index is None else str(index)
    return tuple(f"{names[j]}{suffix}" for j in range(rank))


def _move(u: Word, source: Sequence[str], target: Sequence[str]) -> Word:
    """Rename the letters of block ``source`` to the matching letters of ``target``."""
    return rename_letters(u, dict(zip(source, target)), u.basis)


def _loop(basis: Basis, i: int) -> Word:
    return Word.letter(basis, f"a{i}")


def _chain(basis: Basis, indices) -> Word:
    result = Word.identity(basis)
    for i in indices:
        result = result * _loop(basis, i)
    return result


def _finish(basis: Basis, images: Mapping[str, Word], inverse: Mapping[str, Word]) -> GroupMorphism:
    witness = GroupMorphism(basis, tuple(inverse[name] for name in basis))
    return GroupMorphism(basis, tuple(images[name] for name in basis), witness)


def _synth_a(rng: random.Random, params: Mapping[str, int], max_word: int) -> Instance:
    k = params.get('k', rng.randint(1, 3))
    v_letters = _block(V_NAMES, None, params.get('v_rank', rng.randint(0, 2)))
    loops = tuple(f"a{i}" for i in range(k))
    basis = Basis.of(v_letters + loops)
    theta = random_factor_automorphism(rng, basis, v_letters)
    theta_inv = theta.inverse_witness
    w = random_word(rng, basis, v_letters, rng.randint(0, max_word))
    v = random_word(rng, basis, v_letters, rng.randint(0, max_word))

    images: Dict[str, Word] = {name: theta.image(name) for name in v_letters}
    inverse: Dict[str, Word] = {name: theta_inv.image(name) for name in v_letters}
    for i in range(k - 1):
        images[f"a{i}"] = _loop(basis, i + 1)
        inverse[f"a{i + 1}"] = _loop(basis, i)
    images[f"a{k - 1}"] = w * _loop(basis, 0) * v
    inverse['a0'] = ~apply(theta_inv, w) * _loop(basis, k - 1) * ~apply(theta_inv, v)
    return _finish(basis, images, inverse), CaseA(loop_letters=loops, v_letters=v_letters)


def _synth_b(rng: random.Random, params: Mapping[str, int], max_word: int) -> Instance:
    m = params.get('m', rng.randint(2, 4))
    k = params.get('k', rng.randint(1, 3))
    rank = params.get('rank', rng.randint(0, 2))
    blocks = tuple(_block(V_NAMES, i, rank) for i in range(m))
    loops = tuple(f"a{i}" for i in range(m - 1, k * m))
    basis = Basis.of(sum(blocks, ()) + loops)
    theta = random_factor_automorphism(rng, basis, blocks[0])
    theta_inv = theta.inverse_witness
    v = random_word(rng, basis, blocks[0], rng.randint(0, max_word))
    a = _loop(basis, m - 1)

    images: Dict[str, Word] = {}
    inverse: Dict[str, Word] = {}
    for i in range(m - 1):
        for src, dst in zip(blocks[i], blocks[i + 1]):
            images[src] = Word.letter(basis, dst)
            inverse[dst] = Word.letter(basis, src)
    for src, dst in zip(blocks[m - 1], blocks[0]):
        images[src] = ~a * theta.image(dst) * a

    inv_a = _loop(basis, k * m - 1) * ~_move(apply(theta_inv, v), blocks[0], blocks[m - 1])
    for name in blocks[0]:
        y = _move(theta_inv.image(name), blocks[0], blocks[m - 1])
        inverse[name] = inv_a * y * ~inv_a
    for i in range(m - 1, k * m - 1):
        following = _loop(basis, i + 1)
        residue = i % m
        if residue < m - 2:
            images[f"a{i}"] = following
            inverse[f"a{i + 1}"] = _loop(basis, i)
        elif residue == m - 2:
            images[f"a{i}"] = ~a * following
            inverse[f"a{i + 1}"] = inv_a * _loop(basis, i)
        else:
            images[f"a{i}"] = following * a
            inverse[f"a{i + 1}"] = _loop(basis, i) * ~inv_a
    images[f"a{k * m - 1}"] = v * a
    inverse[f"a{m - 1}"] = inv_a
    cert = CaseB(loop_letters=loops, m=m, k=k, vertex_blocks=blocks)
    return _finish(basis, images, inverse), cert


def _synth_d(rng: random.Random, params: Mapping[str, int], max_word: int) -> Instance:
    n = params.get('n', rng.randint(1, 4))
    k = params.get('k', rng.randint(1, 3))
    v_letters = _block(V_NAMES, None, params.get('v_rank', rng.randint(0, 2)))
    # at least one letter when there are no loops and no V letters
    w_rank = params.get('w_rank', rng.randint(0 if v_letters or k > 1 else 1, 2))
    blocks = tuple(_block(W_NAMES, i, w_rank) for i in range(n))
    loops = tuple(f"a{i}" for i in range(n, k * n))
    basis = Basis.of(v_letters + sum(blocks, ()) + loops)
    theta_v = random_factor_automorphism(rng, basis, v_letters)
    theta_w = random_factor_automorphism(rng, basis, blocks[0])
    if k > 1:
        w = random_word(rng, basis, blocks[0], rng.randint(0, max_word))
        v = random_word(rng, basis, v_letters, rng.randint(0, max_word))
        c = _loop(basis, n)
    else:
        w = v = c = Word.identity(basis)

    images: Dict[str, Word] = {name: theta_v.image(name) for name in v_letters}
    inverse: Dict[str, Word] = {name: theta_v.inverse_witness.image(name) for name in v_letters}
    for i in range(n - 1):
        for src, dst in zip(blocks[i], blocks[i + 1]):
            images[src] = Word.letter(basis, dst)
            inverse[dst] = Word.letter(basis, src)
    for src, dst in zip(blocks[n - 1], blocks[0]):
        images[src] = ~c * theta_w.image(dst) * c

    gamma = Word.identity(basis)
    if k > 1:
        for i in range(n, k * n - 1):
            images[f"a{i}"] = _loop(basis, i + 1)
            inverse[f"a{i + 1}"] = _loop(basis, i)
        spine = _chain(basis, (j * n for j in range(1, k)))
        images[f"a{k * n - 1}"] = ~spine * w * v
        q_word = _chain(basis, (j * n - 1 for j in range(2, k)))
        w_prime = _move(apply(theta_w.inverse_witness, w), blocks[0], blocks[n - 1])
        gamma = (apply(theta_v.inverse_witness, v) * ~_loop(basis, k * n - 1) * ~q_word * w_prime)
        inverse[f"a{n}"] = gamma
    for name in blocks[0]:
        y = _move(theta_w.inverse_witness.image(name), blocks[0], blocks[n - 1])
        inverse[name] = gamma * y * ~gamma
    cert = CaseD(loop_letters=loops, n=n, k=k, v_letters=v_letters, w_blocks=blocks)
    return _finish(basis, images, inverse), cert


_E_SHAPES = [(2, 3), (2, 5), (3, 4)]


def _synth_e(rng: random.Random, params: Mapping[str, int], max_word: int) -> Instance:
    if 'm' in params and 'n' in params:
        m, n = params['m'], params['n']
    else:
        m, n = rng.choice(_E_SHAPES)
    k = params.get('k', rng.randint(1, 2))
    v_rank = params.get('v_rank', rng.randint(0, 1))
    w_rank = params.get('w_rank', rng.randint(0, 1))
    v_blocks = tuple(_block(V_NAMES, i, v_rank) for i in range(m))
    w_blocks = tuple(_block(W_NAMES, i, w_rank) for i in range(n))
    first, last = n + m - 1, k * m * n - 1
    loops = tuple(f"a{i}" for i in range(first, last + 1))
    cert = CaseE(loop_letters=loops, m=m, n=n, k=k, v_blocks=v_blocks, w_blocks=w_blocks)
    cert.check_params()
    basis = Basis.of(sum(v_blocks, ()) + sum(w_blocks, ()) + loops)
    theta_v = random_factor_automorphism(rng, basis, v_blocks[0])
    theta_w = random_factor_automorphism(rng, basis, w_blocks[0])
    w = random_word(rng, basis, w_blocks[0], rng.randint(0, max_word))
    v = random_word(rng, basis, v_blocks[0], rng.randint(0, max_word))
    a = _loop(basis, first)

    images: Dict[str, Word] = {}
    inverse: Dict[str, Word] = {}
    for blocks in (v_blocks, w_blocks):
        for i in range(len(blocks) - 1):
            for src, dst in zip(blocks[i], blocks[i + 1]):
                images[src] = Word.letter(basis, dst)
                inverse[dst] = Word.letter(basis, src)
    for src, dst in zip(v_blocks[m - 1], v_blocks[0]):
        images[src] = a * theta_v.image(dst) * ~a
    for i in range(first, last):
        following = _loop(basis, i + 1)
        if i % m == m - 1:
            images[f"a{i}"] = following * ~a
        elif (i - n) % m == m - 1:
            images[f"a{i}"] = a * following
        else:
            images[f"a{i}"] = following
    spine = _chain(basis, (j * n for j in range(2, k * m)))
    images[f"a{last}"] = ~spine * w * v * ~a

    # The last W block is never reached by the powers the conjugator needs.
    for name in w_blocks[n - 1]:
        images[name] = Word.letter(basis, name)
    draft = GroupMorphism(basis, tuple(images[name] for name in basis))
    x = case_e_conjugator(draft, cert)
    x_prime = Word.identity(basis)
    term = ~a
    for _ in range(cert.q):
        x_prime = x_prime * term
        for _ in range(m):
            term = apply(draft, term)
    for src, dst in zip(w_blocks[n - 1], w_blocks[0]):
        images[src] = ~x * theta_w.image(dst) * x

    theta_v_inv, theta_w_inv = theta_v.inverse_witness, theta_w.inverse_witness
    v_prime = _move(apply(theta_v_inv, v), v_blocks[0], v_blocks[m - 1])
    w_prime = _move(apply(theta_w_inv, w), w_blocks[0], w_blocks[n - 1])
    middle = Word.identity(basis)
    for j in range(2, k * m):
        middle = ~_loop(basis, j * n - 1) * middle
    inv_a = v_prime * ~_loop(basis, last) * middle * x_prime * w_prime * ~x_prime
    inverse[f"a{first}"] = inv_a
    for i in range(first, last):
        if i % m == m - 1:
            inverse[f"a{i + 1}"] = _loop(basis, i) * inv_a
        elif (i - n) % m == m - 1:
            inverse[f"a{i + 1}"] = ~inv_a * _loop(basis, i)
        else:
            inverse[f"a{i + 1}"] = _loop(basis, i)
    for name in v_blocks[0]:
        y = _move(theta_v_inv.image(name), v_blocks[0], v_blocks[m - 1])
        inverse[name] = ~inv_a * y * inv_a
    for name in w_blocks[0]:
        y = _move(theta_w_inv.image(name), w_blocks[0], w_blocks[n - 1])
        inverse[name] = x_prime * y * ~x_prime
    return _finish(basis, images, inverse), cert


_SYNTHESIZERS = {'A': _synth_a, 'B': _synth_b, 'D': _synth_d, 'E': _synth_e}


def synthesize_instance(case: str, params: Optional[Mapping[str, int]] = None, seed: int = 0,
                        max_word: int = 4) -> Instance:
    """Random automorphism in the form of case ``case`` plus its certificate.

    Args:
        case: One of ``A``, ``B``, ``D``, ``E``.
        params: Fixed parameters (``k``, ``m``, ``n``, block ranks); the rest are drawn from the seed.
        seed: Seed for ``random.Random``.
        max_word: Longest witness word.
    """
    try:
        synthesizer = _SYNTHESIZERS[case.upper()]
    except KeyError:
        raise CertificateError(f"No synthesizer for case {case!r} (choose from {' '.join(_SYNTHESIZERS)})")
    rng = random.Random(seed)
    phi, cert = synthesizer(rng, dict(params or {}), max_word)
    logger.debug(f"Synthesized case {cert.tag} instance (seed {seed}) on {len(phi.basis)} letters")
    return phi, cert


def mutate_instance(phi: GroupMorphism, seed: int, keep_witness: bool = False) -> Tuple[GroupMorphism, str]:
    """Change the image of one letter.

    By default ``phi`` is precomposed with the Nielsen move ``x -> x y^e``
    (``x -> x^-1`` on a rank-one basis): the result is again an automorphism
    with a valid inverse witness, so only the template clauses can reject it.
    With ``keep_witness`` the image is replaced by a different random word of
    the same length and the old witness is kept.

    Raises:
        MorphismError: if the basis is empty.
    """
    basis = phi.basis
    if not basis.letters:
        raise MorphismError("Cannot mutate an automorphism of the trivial group")
    rng = random.Random(seed)
    name = rng.choice(basis.letters)
    if keep_witness:
        original = phi.image(name)
        length = max(1, original.length)
        replacement = original
        for _ in range(100):
            replacement = random_word(rng, basis, basis.letters, length)
            if replacement != original:
                break
        images = tuple(replacement if letter == name else image for letter, image in zip(basis, phi.images))
        return GroupMorphism(basis, images, phi.inverse_witness), name
    X = Word.letter(basis, name)
    others = [letter for letter in basis.letters if letter != name]
    if others:
        Y = Word.letter(basis, rng.choice(others), rng.choice([1, -1]))
        move = substitution(basis, {name: X * Y}, {name: X * ~Y})
    else:
        move = substitution(basis, {name: ~X}, {name: ~X})
    return compose(phi, move), name
