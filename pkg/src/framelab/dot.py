"""DOT (graphviz) export of Hasse diagrams with operator annotations."""

from __future__ import annotations

from .posets import PointSet, bits
from .spaces import center, kernel, core, reg_part


def poset_dot(poset, focus_mask=None, annotations=None, graph_name="hasse"):
    """Hasse diagram with stable node names p0..pn, edges bottom-up.

    annotations maps point -> list of tags appended to the node label;
    focus members are drawn with a doubled border.
    """
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;"]
    for i in range(poset.size):
        label = poset.labels[i] if poset.labels else f"p{i}"
        tags = annotations.get(i) if annotations else None
        if tags:
            label = f"{label}\\n{','.join(tags)}"
        attrs = [f'label="{label}"']
        if focus_mask is not None and (focus_mask >> i) & 1:
            attrs.append("peripheries=2")
        lines.append(f"  p{i} [{', '.join(attrs)}];")
    for i, j in poset.covers():
        lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_dot(space, focus=None):
    """Hasse diagram of a space; a focus upset adds ker/core/reg/cen tags."""
    annotations = None
    focus_mask = None
    if focus is not None:
        if not isinstance(focus, PointSet):
            focus = space.points.set_from_mask(focus)
        focus_mask = focus.mask
        parts = {
            "ker": kernel(space, focus).mask,
            "core": core(space, focus).mask,
            "reg": reg_part(space, focus).mask,
            "cen": center(space, focus).mask,
        }
        annotations = {}
        for i in range(space.size):
            tags = [name for name, mask in parts.items() if (mask >> i) & 1]
            if tags:
                annotations[i] = tags
    return poset_dot(
        space.points, focus_mask=focus_mask, annotations=annotations,
        graph_name="priestley",
    )


def lattice_dot(lattice):
    """Hasse diagram of a lattice's carrier order."""
    poset = lattice.carrier_poset()
    annotations = None
    if lattice.element_upsets is not None:
        annotations = {
            i: ["{" + ",".join(str(p) for p in bits(m)) + "}"]
            for i, m in enumerate(lattice.element_upsets)
        }
    return poset_dot(poset, annotations=annotations, graph_name="lattice")
