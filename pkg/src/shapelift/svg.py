"""Standalone SVG figures of moment images, regions and paths.

Geometry stays exact until the final affine map to the viewport, where values
are printed with a fixed number of decimals; rendering never feeds back into
any predicate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .domains import ToricDomain, bounding_box, describe, image_vertices
from .exactgeom import Point, PolyPath, Region, clip_polygon, region_closure

WIDTH = HEIGHT = 480
MARGIN = 40
PALETTE = ["#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272", "#d9d9d9"]


@dataclass
class TaggedRegion:
    label: str
    polygons: list[list[Point]]
    fill: str = ""


@dataclass
class Scene:
    title: str
    outline: list[Point]
    extent: tuple[Fraction, Fraction]
    regions: list[TaggedRegion] = field(default_factory=list)
    lines: list[tuple[str, Point, Point]] = field(default_factory=list)
    paths: list[PolyPath] = field(default_factory=list)
    outlines: list[tuple[str, list[Point]]] = field(default_factory=list)


def region_polygons(region: Region, extent: tuple[Fraction, Fraction]) -> list[list[Point]]:
    """Clip the viewport box by each conjunction; one polygon per nonempty term."""
    rmax, smax = extent
    z = Fraction(0)
    box = [Point(z, z), Point(rmax, z), Point(rmax, smax), Point(z, smax)]
    out = []
    for term in region_closure(region):
        poly = clip_polygon(box, term)
        if len(poly) >= 3:
            out.append(poly)
    return out


def domain_scene(X: ToricDomain, title: str = "", pad: Fraction = Fraction(11, 10)) -> Scene:
    rmax, smax = bounding_box(X)
    side = max(rmax, smax) * pad
    return Scene(title or describe(X), image_vertices(X), (side, side))


def add_region(scene: Scene, label: str, region: Region) -> None:
    fill = PALETTE[len(scene.regions) % len(PALETTE)]
    scene.regions.append(TaggedRegion(label, region_polygons(region, scene.extent), fill))


class _Viewport:
    def __init__(self, extent: tuple[Fraction, Fraction]):
        self.sx = (WIDTH - 2 * MARGIN) / float(extent[0])
        self.sy = (HEIGHT - 2 * MARGIN) / float(extent[1])

    def xy(self, p: Point) -> tuple[str, str]:
        return f"{MARGIN + float(p.r) * self.sx:.2f}", f"{HEIGHT - MARGIN - float(p.s) * self.sy:.2f}"

    def __call__(self, p: Point) -> str:
        return ",".join(self.xy(p))

    def line(self, p0: Point, p1: Point, style: str) -> str:
        (x1, y1), (x2, y2) = self.xy(p0), self.xy(p1)
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>'


def _poly(vp: _Viewport, pts: Sequence[Point], style: str) -> str:
    return f'<polygon points="{" ".join(vp(p) for p in pts)}" {style}/>'


def render_svg(scene: Scene) -> str:
    vp = _Viewport(scene.extent)
    z = Fraction(0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
        'markerHeight="7" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#d62728"/></marker></defs>',
        f'<text x="{MARGIN}" y="{MARGIN // 2}" font-family="sans-serif" font-size="14">{scene.title}</text>',
        vp.line(Point(z, z), Point(scene.extent[0], z), 'stroke="#444"'),
        vp.line(Point(z, z), Point(z, scene.extent[1]), 'stroke="#444"'),
    ]
    for reg in scene.regions:
        for pts in reg.polygons:
            parts.append(_poly(vp, pts, f'fill="{reg.fill}" fill-opacity="0.6" stroke="none" class="region" '
                                        f'data-label="{reg.label}"'))
    parts.append(_poly(vp, scene.outline, 'fill="none" stroke="black" stroke-width="1.5" class="outline"'))
    for label, pts in scene.outlines:
        parts.append(_poly(vp, pts, f'fill="none" stroke="#555" stroke-dasharray="4 3" class="outline" '
                                    f'data-label="{label}"'))
    for label, p0, p1 in scene.lines:
        parts.append(vp.line(p0, p1, f'stroke="#2c7fb8" stroke-dasharray="6 3" class="line" data-label="{label}"'))
    for path in scene.paths:
        pts = " ".join(vp(v) for v in path.vertices)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#d62728" stroke-width="2" '
                     f'marker-end="url(#arrow)" class="path"/>')
    y = MARGIN
    for reg in scene.regions:
        parts.append(f'<rect x="{WIDTH - 150}" y="{y}" width="12" height="12" fill="{reg.fill}"/>')
        parts.append(f'<text x="{WIDTH - 132}" y="{y + 11}" font-family="sans-serif" font-size="11">{reg.label}</text>')
        y += 18
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_svg(scene: Scene, out: str | Path) -> None:
    if not (scene.regions or scene.paths or scene.outline):
        raise ValueError("empty scene")
    Path(out).write_text(render_svg(scene), encoding="utf-8")


# --- scenes for the CLI ----------------------------------------------------------


def lift_scene(X: ToricDomain, paths: Sequence[PolyPath] = ()) -> Scene:
    from .domains import CONVEX_FAMILIES, reduced_region
    from .pathlift import flexible_region
    from .shape import knotted_region, obstructing_form, shape_region

    scene = domain_scene(X)
    if isinstance(X, CONVEX_FAMILIES):
        add_region(scene, "shape invariant", shape_region(X))
        add_region(scene, "reduced image", reduced_region(X))
        add_region(scene, "flexible", tuple(t + term for t in flexible_region(X)
                                            for term in reduced_region(X)))
        add_region(scene, "knotted", knotted_region(X))
        alpha, beta, thr = obstructing_form(X)
        z = Fraction(0)
        scene.lines.append(("obstructing line", Point(z, thr / beta), Point(thr / alpha, z)))
    else:
        add_region(scene, "reduced image", reduced_region(X))
    scene.paths.extend(paths)
    return scene


def obstruct_scene(inst, witness=None) -> Scene:
    from .exactgeom import ge, le

    X = inst.X
    rmax, smax = bounding_box(X)
    side = max(rmax, smax, inst.a, inst.b) * Fraction(11, 10)
    scene = Scene(f"{describe(X)} into E({inst.a},{inst.b})", image_vertices(X), (side, side))
    z = Fraction(0)
    scene.outlines.append(("target", [Point(z, z), Point(inst.a, z), Point(z, inst.b)]))
    # the band of the target outside the excluded ellipsoid, where the path must run
    band = (ge(inst.k + 1, 1, inst.b), le(inst.b, inst.a, inst.a * inst.b), ge(1, 0, 0), ge(0, 1, 0))
    add_region(scene, "target minus excluded", (band,))
    scene.lines.append(("excluded boundary", Point(z, inst.b), Point(inst.b / (inst.k + 1), z)))
    if witness is not None:
        scene.regions.append(TaggedRegion("witness", [witness.triangle()], PALETTE[2]))
        scene.paths.append(witness.path)
    return scene
