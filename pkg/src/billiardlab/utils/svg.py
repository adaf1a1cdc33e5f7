# src/billiardlab/utils/svg.py
from __future__ import annotations
import xml.etree.ElementTree as ET
from typing import Any, Dict, List, Sequence

SVG_NS = "http://www.w3.org/2000/svg"
PIXELS = 800
MARGIN = 0.08          # fraction of the view box left around the billiard
STROKE = 0.004         # in units of the semi-major axis
NUMBER_FORMAT = "%.17g"

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _num(x: float) -> str:
    """17 significant digits, so a payload read back from JSON draws identically."""
    return NUMBER_FORMAT % x


def svgroot(half_w: float, half_h: float) -> ET.Element:
    """Root element whose user coordinates are billiard coordinates (y up)."""
    w, h = 2.0 * half_w, 2.0 * half_h
    return ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=f"{PIXELS}px",
        height=f"{int(round(PIXELS * h / w))}px",
        viewBox=" ".join(_num(v) for v in (-half_w, -half_h, w, h)),
    )


def svggroup(parent: ET.Element, **attrs: str) -> ET.Element:
    return ET.SubElement(parent, "g", **attrs)


def _path(points: Sequence[Sequence[float]], close: bool) -> str:
    s = "M" + _num(points[0][0]) + " " + _num(points[0][1])
    for x, y in points[1:]:
        s += "L" + _num(x) + " " + _num(y)
    return s + ("z" if close else "")


def svglinelist(parent: ET.Element, points: Sequence[Sequence[float]], **attrs: str):
    if not points:
        return None
    return ET.SubElement(parent, "path", d=_path(points, False), **attrs)


def svglineloop(parent: ET.Element, points: Sequence[Sequence[float]], **attrs: str):
    if not points:
        return None
    return ET.SubElement(parent, "path", d=_path(points, True), **attrs)


def svgdots(parent: ET.Element, points: Sequence[Sequence[float]], r: float, fill: str) -> ET.Element:
    g = svggroup(parent, fill=fill)
    for x, y in points:
        ET.SubElement(g, "circle", cx=_num(x), cy=_num(y), r=_num(r))
    return g


def render_payload(payload: Dict[str, Any]) -> ET.Element:
    """
    Draw an exported payload: billiard, caustic, orbits and locus point sets. Everything
    is taken from the payload as-is; nothing is recomputed.
    """
    a, b = payload["ellipse"]["a"], payload["ellipse"]["b"]
    pad = MARGIN * a
    root = svgroot(a + pad, b + pad)
    sw = _num(STROKE * a)
    scene = svggroup(root, transform="scale(1,-1)", fill="none")

    ET.SubElement(scene, "ellipse", cx="0", cy="0", rx=_num(a), ry=_num(b), stroke="black", **{"stroke-width": sw})
    caustic = payload.get("caustic")
    if caustic:
        ET.SubElement(scene, "ellipse", cx="0", cy="0", rx=_num(caustic["a_c"]), ry=_num(caustic["b_c"]),
                      stroke="#7f7f7f", **{"stroke-width": sw, "stroke-dasharray": _num(4 * STROKE * a)})

    orbits: List = payload.get("orbits") or []
    og = svggroup(scene, stroke="#1f77b4", **{"stroke-width": sw})
    closed = payload.get("closed_orbits", True)
    for verts in orbits:
        (svglineloop if closed else svglinelist)(og, verts)

    for i, (name, pts) in enumerate(sorted((payload.get("loci") or {}).items())):
        if pts:
            g = svgdots(scene, pts, 2.0 * STROKE * a, PALETTE[i % len(PALETTE)])
            g.set("id", name)
    return root


def to_svg_text(payload: Dict[str, Any]) -> str:
    return ET.tostring(render_payload(payload), encoding="unicode")


def svgwrite(svg: ET.Element, name: str) -> None:
    ET.ElementTree(svg).write(name, encoding="utf-8", xml_declaration=True)
