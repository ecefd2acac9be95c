"""Free-group word algebra."""

from .word import (
    STABLE_LETTER, Basis, BasisMismatchError, Word, WordError, concat, cyclic_key,
    cyclic_reduce, format_word, invert, is_conjugate, parse_word, product,
    reduced_words, rename_letters, uses_only, word_power, words_up_to,
)

__all__ = [
    'STABLE_LETTER', 'Basis', 'BasisMismatchError', 'Word', 'WordError', 'concat',
    'cyclic_key', 'cyclic_reduce', 'format_word', 'invert', 'is_conjugate',
    'parse_word', 'product', 'reduced_words', 'rename_letters', 'uses_only',
    'word_power', 'words_up_to',
]
