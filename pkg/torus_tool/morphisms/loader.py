"""Automorphism files.

Line-based sections::

    [basis]
    letters = x y z

    [images]
    x = y
    y = z
    z = x y

    [inverse]
    x = z x^-1
    y = x
    z = y

``[inverse]`` is optional. An empty value (or ``1``) is the identity word.
"""

import configparser
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from torus_tool.words import Basis, WordError, format_word

from .morphism import GroupMorphism, MorphismError

logger = logging.getLogger(__name__)


class AutomorphismFileError(ValueError):
    """Raised when an automorphism file cannot be parsed."""


def new_parser(allow_no_value: bool = False) -> configparser.ConfigParser:
    """Case-preserving parser without interpolation (``^`` and ``%`` are literal)."""
    parser = configparser.ConfigParser(interpolation=None, allow_no_value=allow_no_value,
                                       delimiters=('=',), comment_prefixes=('#', ';'),
                                       inline_comment_prefixes=('#',))
    parser.optionxform = str
    return parser


def _image_texts(parser: configparser.ConfigParser, section: str) -> Dict[str, str]:
    texts = {}
    for name, value in parser.items(section):
        value = (value or '').strip()
        texts[name] = '' if value == '1' else value
    return texts


def parse_automorphism(text: str, source: str = '<string>') -> GroupMorphism:
    parser = new_parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise AutomorphismFileError(f"{source}: {e}")

    if not parser.has_option('basis', 'letters'):
        raise AutomorphismFileError(f"{source}: missing [basis] letters")
    if not parser.has_section('images'):
        raise AutomorphismFileError(f"{source}: missing [images] section")

    try:
        basis = Basis.of(parser.get('basis', 'letters'))
        images = _image_texts(parser, 'images')
        inverse: Optional[Dict[str, str]] = None
        if parser.has_section('inverse'):
            inverse = _image_texts(parser, 'inverse')
        phi = GroupMorphism.from_images(basis, images, inverse)
    except (WordError, MorphismError) as e:
        raise AutomorphismFileError(f"{source}: {e}")

    logger.debug(f"Loaded automorphism on ({basis}) from {source}")
    return phi


def load_automorphism(path: Union[str, Path]) -> GroupMorphism:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Automorphism file not found: {path}")
    return parse_automorphism(path.read_text(encoding='utf-8'), source=str(path))


def dump_automorphism(phi: GroupMorphism) -> str:
    lines = ['[basis]', f"letters = {phi.basis}", '', '[images]']
    lines.extend(f"{name} = {format_word(image)}".rstrip() for name, image in zip(phi.basis, phi.images))
    if phi.has_witness:
        lines.extend(['', '[inverse]'])
        lines.extend(f"{name} = {format_word(image)}".rstrip()
                     for name, image in zip(phi.basis, phi.inverse_witness.images))
    return '\n'.join(lines) + '\n'


def save_automorphism(phi: GroupMorphism, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_automorphism(phi), encoding='utf-8')
    logger.info(f"Wrote automorphism to {path}")
