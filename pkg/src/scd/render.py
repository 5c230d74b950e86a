"""Static SVG arc diagrams: nodes on a line, labelled arcs above.

A pure string emitter with fixed layout constants; output is byte-identical
for identical inputs.
"""

from __future__ import annotations

from .partitions import LabelledPartition, ground_set, pos

NODE_SPACING = 44
MARGIN = 28
BASELINE = 110
NODE_RADIUS = 3
ARC_RISE = 26  # vertical rise per unit of span


def _node_x(position: int) -> int:
    return MARGIN + (position - 1) * NODE_SPACING


def svg_arc_diagram(lam: LabelledPartition) -> str:
    """Render the full arc set of a partition as a standalone SVG document."""
    ground = ground_set(lam.family, lam.n)
    width = 2 * MARGIN + max(len(ground) - 1, 0) * NODE_SPACING
    height = BASELINE + 40
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{MARGIN}" y="18" font-size="13" font-family="monospace">'
        f"family {lam.family}, n={lam.n}, q={lam.field.q}</text>",
    ]
    for k in ground:
        t = pos(k, lam.n, lam.family)
        x = _node_x(t)
        parts.append(
            f'<circle cx="{x}" cy="{BASELINE}" r="{NODE_RADIUS}" fill="black"/>'
        )
        parts.append(
            f'<text x="{x}" y="{BASELINE + 18}" font-size="12" font-family="monospace" '
            f'text-anchor="middle">{k}</text>'
        )
    for a in lam.full_arcs():
        t1 = pos(a.i, lam.n, lam.family)
        t2 = pos(a.j, lam.n, lam.family)
        x1, x2 = _node_x(t1), _node_x(t2)
        span = t2 - t1
        rise = min(ARC_RISE * span, BASELINE - 34)
        apex_y = BASELINE - rise
        mid = (x1 + x2) // 2
        parts.append(
            f'<path d="M {x1} {BASELINE} Q {mid} {BASELINE - 2 * rise} {x2} {BASELINE}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{mid}" y="{apex_y - 4}" font-size="11" font-family="monospace" '
            f'text-anchor="middle">{a.label.code}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
