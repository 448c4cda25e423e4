"""SVG rendering of a result file: obstacles, optional tree, and the three path stages."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .errors import InvalidResult

SVG_NS = "http://www.w3.org/2000/svg"

STYLES = {
    "raw": {"stroke": "#9e9e9e", "stroke-width": "1.5", "fill": "none", "stroke-dasharray": "4 3"},
    "reduced": {"stroke": "#1f77b4", "stroke-width": "2", "fill": "none"},
    "smoothed": {"stroke": "#d62728", "stroke-width": "2.5", "fill": "none"},
}
_PATH_KEYS = {"raw": "raw_path", "reduced": "reduced_path", "smoothed": "smoothed_samples"}


def _num(v: float) -> str:
    # Fixed precision keeps the output byte-stable and compact.
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _polyline(parent, pts, **attrs):
    return ET.SubElement(parent, "polyline", points=" ".join(f"{_num(x)},{_num(y)}" for x, y in pts), **attrs)


def render_svg(doc: dict, *, show_tree: bool = True, width_px: int = 800) -> str:
    try:
        scen = doc["scenario"]
        (x0, y0), (x1, y1) = scen["bounds"]["min"], scen["bounds"]["max"]
        infl = scen["uav"]["uav_radius"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidResult(f"result has no usable scenario block ({exc})") from None
    w, h = x1 - x0, y1 - y0
    ET.register_namespace("", SVG_NS)
    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        width=str(width_px),
        height=str(round(width_px * h / w)),
        viewBox=f"{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}",
    )
    # Flip y so the drawing uses the scenario's y-up frame.
    world = ET.SubElement(root, "g", transform=f"matrix(1 0 0 -1 0 {_num(y0 + y1)})")
    ET.SubElement(
        world, "rect", x=_num(x0), y=_num(y0), width=_num(w), height=_num(h),
        fill="#ffffff", stroke="#000000", **{"stroke-width": "2", "class": "bounds"},
    )

    obs_g = ET.SubElement(world, "g", id="obstacles")
    for ob in scen["obstacles"]:
        if ob["type"] == "circle":
            (cx, cy), r = ob["center"], ob["radius"]
            ET.SubElement(obs_g, "circle", cx=_num(cx), cy=_num(cy), r=_num(r), fill="#555555",
                          **{"class": "obstacle"})
            ET.SubElement(obs_g, "circle", cx=_num(cx), cy=_num(cy), r=_num(r + infl), fill="none",
                          stroke="#555555", **{"stroke-dasharray": "3 2", "class": "inflated"})
        else:
            (ax, ay), (bx, by) = ob["min"], ob["max"]
            ET.SubElement(obs_g, "rect", x=_num(ax), y=_num(ay), width=_num(bx - ax), height=_num(by - ay),
                          fill="#555555", **{"class": "obstacle"})
            ET.SubElement(
                obs_g, "rect", x=_num(ax - infl), y=_num(ay - infl), width=_num(bx - ax + 2 * infl),
                height=_num(by - ay + 2 * infl), rx=_num(infl), fill="none", stroke="#555555",
                **{"stroke-dasharray": "3 2", "class": "inflated"},
            )

    tree = doc.get("tree")
    if show_tree and tree:
        tg = ET.SubElement(world, "g", id="tree", stroke="#c8e6c9", fill="none", **{"stroke-width": "0.8"})
        nodes = tree["nodes"]
        for i, parent in enumerate(tree["parents"]):
            if parent is not None:
                (ax, ay), (bx, by) = nodes[parent], nodes[i]
                ET.SubElement(tg, "line", x1=_num(ax), y1=_num(ay), x2=_num(bx), y2=_num(by))

    for rep in ("raw", "reduced", "smoothed"):
        pg = ET.SubElement(world, "g", id=f"paths-{rep}", **STYLES[rep])
        for g in doc["goals"]:
            if g.get("status") == "reached":
                _polyline(pg, g[_PATH_KEYS[rep]], **{"class": f"path {rep}", "data-goal": str(g["index"])})

    marks = ET.SubElement(world, "g", id="markers")
    sx, sy = scen["start"]
    ET.SubElement(marks, "circle", cx=_num(sx), cy=_num(sy), r=_num(0.01 * w), fill="#2ca02c",
                  **{"class": "start"})
    for g in doc["goals"]:
        gx, gy = g["goal"]
        color = "#ff7f0e" if g.get("status") == "reached" else "#000000"
        s = 0.01 * w
        ET.SubElement(marks, "rect", x=_num(gx - s), y=_num(gy - s), width=_num(2 * s), height=_num(2 * s),
                      fill=color, **{"class": "goal", "data-goal": str(g["index"])})

    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=False) + "\n"
