"""
Braid Schedule SVG Renderer
Draws a braid closure as stacked one-crossing layers with its dancers.

The drawing shows:
- one horizontal band per braid letter, bottom to top (class="layer")
- closure arcs nested to the right of the braid (class="closure")
- each dancer's passes in its own color
- a start dot at the bottom of every pass (class="start")
- a tick where a dancer may wait before an over passage (class="wait")

Coordinates are integers computed from the braid alone, so the same
schedule always renders to the same bytes.

Version: 1.0.0
"""

from html import escape
from typing import Dict, List, Tuple

from dancekit.braids import BraidClosure
from dancekit.choreography import DanceSchedule, dancer_name
from dancekit.diagram_model import Role

COLUMN = 60
ROW = 50
MARGIN = 40
ARC = 20
STROKE = 3
HALO = 9

PALETTE = (
    '#1f77b4', '#d62728', '#2ca02c', '#9467bd',
    '#ff7f0e', '#17becf', '#8c564b', '#e377c2',
)


def dancer_color(dancer: int) -> str:
    return PALETTE[dancer % len(PALETTE)]


def _line(x1: int, y1: int, x2: int, y2: int, color: str, width: int = STROKE) -> str:
    return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{color}" stroke-width="{width}" stroke-linecap="round"/>')


def render_braid_svg(closure: BraidClosure, schedule: DanceSchedule) -> str:
    """
    Render a verified braid schedule as an SVG 1.1 document.

    Args:
        closure: braid closure the schedule was built on
        schedule: one-dancer-per-pass schedule on closure.sequence

    Returns:
        SVG document text ending in a newline
    """
    braid = closure.braid
    n = braid.strands
    layers = braid.length

    width = 2 * MARGIN + (n - 1) * COLUMN + (n + 1) * ARC
    height = 2 * MARGIN + layers * ROW + 2 * n * ARC
    y_bottom = height - MARGIN - n * ARC
    y_top = y_bottom - layers * ROW

    def x_at(position: int) -> int:
        return MARGIN + (position - 1) * COLUMN

    # a pass is one dancer, so occupants are tracked as dancer indices
    occupant: Dict[int, int] = {position: d for d, position in enumerate(closure.pass_positions)}

    waits_at_letter: Dict[int, List[int]] = {}
    for dancer, event in sorted(schedule.waits):
        waits_at_letter.setdefault(closure.letter_of[event], []).append(dancer)

    title = escape(f"closure of n={n}; {' '.join(str(i * s) for i, s in braid.letters)}".strip())
    parts: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<title>{title}</title>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]

    for k, (index, sign) in enumerate(braid.letters):
        y0 = y_bottom - k * ROW
        y1 = y0 - ROW
        under_from, over_from = (index, index + 1) if sign > 0 else (index + 1, index)
        steps = _letter_steps(closure, schedule, k)
        parts.append(f'<g class="layer" data-letter="{k + 1}" data-steps="{steps[0]},{steps[1]}">')
        for position in range(1, n + 1):
            if position in (index, index + 1):
                continue
            parts.append(_line(x_at(position), y0, x_at(position), y1, dancer_color(occupant[position])))
        under_to = over_from
        over_to = under_from
        parts.append(_line(x_at(under_from), y0, x_at(under_to), y1, dancer_color(occupant[under_from])))
        parts.append(_line(x_at(over_from), y0, x_at(over_to), y1, '#ffffff', HALO))
        parts.append(_line(x_at(over_from), y0, x_at(over_to), y1, dancer_color(occupant[over_from])))
        for dancer in waits_at_letter.get(k, []):
            x = x_at(over_from)
            parts.append(f'<line class="wait" x1="{x - 8}" y1="{y0 - 4}" x2="{x + 8}" y2="{y0 - 4}" '
                         f'stroke="{dancer_color(dancer)}" stroke-width="2"/>')
        parts.append('</g>')
        occupant[index], occupant[index + 1] = occupant[index + 1], occupant[index]

    for position in range(1, n + 1):
        offset = (n - position + 1) * ARC
        x = x_at(position)
        x_right = x_at(n) + offset
        points = [
            (x, y_top), (x, y_top - offset), (x_right, y_top - offset),
            (x_right, y_bottom + offset), (x, y_bottom + offset), (x, y_bottom),
        ]
        parts.append(
            f'<polyline class="closure" points="{_points(points)}" fill="none" '
            f'stroke="{dancer_color(occupant[position])}" stroke-width="{STROKE}"/>'
        )

    for dancer, position in enumerate(closure.pass_positions):
        x = x_at(position)
        color = dancer_color(dancer)
        parts.append(f'<circle class="start" cx="{x}" cy="{y_bottom}" r="6" fill="{color}"/>')
        parts.append(f'<text x="{x - 4}" y="{y_bottom + 22}" font-family="monospace" '
                     f'font-size="12" fill="{color}">{dancer_name(dancer)}</text>')

    parts.append('</svg>')
    return "\n".join(parts) + "\n"


def _points(points: List[Tuple[int, int]]) -> str:
    return ' '.join(f"{x},{y}" for x, y in points)


def _letter_steps(closure: BraidClosure, schedule: DanceSchedule, letter: int) -> Tuple[int, int]:
    """(Under step, Over step) of one letter."""
    under = over = -1
    for event, owner in enumerate(closure.letter_of):
        if owner != letter:
            continue
        if closure.sequence[event].role is Role.UNDER:
            under = schedule.steps[event]
        else:
            over = schedule.steps[event]
    return under, over
