"""
DANCEKIT Text Codecs
Parsing and canonical serialization for the three diagram formats, plus the
JSON envelope shared by every machine-readable result.

Grammars:
    Gauss:  tokens O<k> / U<k>, case-insensitive, whitespace ignored
            e.g. "O1U2O3U1O2U3"
    PD:     X(a,b,c,d) terms separated by whitespace, commas or semicolons
            e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    Braid:  header n=<strands>; then whitespace-separated letters, either
            s<i> / S<i> (positive / negative) or signed integers i / -i
            e.g. "n=2; 1 1 1"
    Cuts:   orientation letter F or R, a colon, comma-separated gaps
            e.g. "F:0,3"

Serializers emit the canonical form: uppercase Gauss tokens without spaces,
single-space-separated PD terms, and integer braid letters.

Usage:
    from dancekit.codec import parse_gauss, serialize_gauss

Version: 1.0.0
"""

import json
import re
from typing import Any, Dict, List, Tuple

from dancekit.dance_engine import CutSet, Orientation
from dancekit.diagram_model import BraidWord, GaussSequence, PDCode, gauss_from_tokens
from dancekit.errors import DiagramSyntaxError

SCHEMA_VERSION = 1

_GAUSS_TOKEN = re.compile(r'([OoUu])\s*(\d+)')
_PD_TERM = re.compile(r'X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)', re.IGNORECASE)
_PD_SEPARATOR = re.compile(r'[\s,;]*')
_BRAID_HEADER = re.compile(r'\s*n\s*=\s*(\d+)\s*;', re.IGNORECASE)
_BRAID_LETTER = re.compile(r'(?:([sS])(\d+)|(-?\d+))$')
_CUTS = re.compile(r"\s*([FfRr])\s*:\s*(\d+(?:\s*,\s*\d+)*)\s*$")


def parse_gauss(text: str) -> GaussSequence:
    """
    Parse a Gauss sequence such as "O1U2O3U1O2U3".

    Args:
        text: Gauss text

    Returns:
        GaussSequence, canonically relabeled

    Raises:
        DiagramSyntaxError: If a token is not O<k> or U<k>
        RoleMismatch: If a crossing lacks exactly one U and one O
    """
    tokens: List[Tuple[str, int]] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _GAUSS_TOKEN.match(text, pos)
        if not match:
            bad = text[pos:].split()[0] if text[pos:].split() else text[pos]
            raise DiagramSyntaxError("expected O<k> or U<k>", token=bad, offset=pos)
        label = int(match.group(2))
        if label < 1:
            raise DiagramSyntaxError("crossing labels start at 1", token=match.group(0), offset=pos)
        tokens.append((match.group(1), label))
        pos = match.end()
    return gauss_from_tokens(tokens)


def parse_pd(text: str) -> PDCode:
    """
    Parse a PD code such as "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".

    Args:
        text: PD text

    Returns:
        PDCode

    Raises:
        DiagramSyntaxError: If a term is not X(a,b,c,d)
        MalformedPD: If an edge label does not appear exactly twice
    """
    crossings: List[Tuple[int, int, int, int]] = []
    pos = _PD_SEPARATOR.match(text, 0).end()
    while pos < len(text):
        match = _PD_TERM.match(text, pos)
        if not match:
            end = text.find(')', pos)
            bad = text[pos:end + 1] if end != -1 else text[pos:]
            raise DiagramSyntaxError("expected X(a,b,c,d)", token=bad, offset=pos)
        a, b, c, d = (int(group) for group in match.groups())
        crossings.append((a, b, c, d))
        pos = _PD_SEPARATOR.match(text, match.end()).end()
    return PDCode(tuple(crossings))


def parse_braid(text: str) -> BraidWord:
    """
    Parse a braid word such as "n=4; 1 -2 1 -2" or "n=2; s1 s1 s1".

    Args:
        text: braid text

    Returns:
        BraidWord

    Raises:
        DiagramSyntaxError: If the header or a letter is malformed
        IndexOutOfRange: If a letter index is outside 1..n-1
    """
    header = _BRAID_HEADER.match(text)
    if not header:
        raise DiagramSyntaxError("braid text must start with n=<strands>;", token=text[:8], offset=0)
    strands = int(header.group(1))

    letters: List[Tuple[int, int]] = []
    offset = header.end()
    for raw in text[header.end():].split():
        offset = text.index(raw, offset)
        match = _BRAID_LETTER.match(raw)
        if not match:
            raise DiagramSyntaxError("expected s<i>, S<i> or a signed integer", token=raw, offset=offset)
        if match.group(1):
            letters.append((int(match.group(2)), 1 if match.group(1) == 's' else -1))
        else:
            value = int(match.group(3))
            letters.append((abs(value), -1 if value < 0 else 1))
        offset += len(raw)
    return BraidWord(strands, tuple(letters))


def serialize_gauss(seq: GaussSequence) -> str:
    """Canonical Gauss text, e.g. "O1U2O3U1O2U3"."""
    return str(seq)


def serialize_pd(pd: PDCode) -> str:
    """Canonical PD text, e.g. "X(1,4,2,5) X(3,6,4,1)"."""
    return ' '.join(f"X({a},{b},{c},{d})" for a, b, c, d in pd.crossings)


def serialize_braid(braid: BraidWord) -> str:
    """Canonical braid text, e.g. "n=2; 1 1 1"."""
    letters = ' '.join(str(index * sign) for index, sign in braid.letters)
    return f"n={braid.strands}; {letters}" if letters else f"n={braid.strands};"


def dump_payload(payload: Dict[str, Any]) -> str:
    """
    Serialize a result object with the schema version stamped in.

    Output is deterministic: sorted keys, two-space indent, trailing newline.
    """
    body = dict(payload)
    body['schema_version'] = SCHEMA_VERSION
    return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_cuts(text: str) -> CutSet:
    """
    Parse a cut set such as "F:0,3" or "r:2".

    Raises:
        DiagramSyntaxError: If the text does not match <F|R>:<gap>[,<gap>...]
        InvalidCutSet: If gaps repeat
    """
    match = _CUTS.match(text)
    if not match:
        raise DiagramSyntaxError("expected <F|R>:<gap>[,<gap>...]", token=text.strip(), offset=0)
    orientation = Orientation(match.group(1).upper())
    gaps = tuple(int(g) for g in match.group(2).split(','))
    return CutSet(orientation, gaps)


def serialize_cuts(cuts: CutSet) -> str:
    """Canonical cut set text, e.g. "F:0,3"."""
    return str(cuts)
