# incidence_diagram.py - static line/point incidence diagrams for cubic surface pairs
"""
ASCII tables for the terminal and an SVG drawing through a Jinja2 template.

Three planes: one panel per plane x_a = 0. Its two conductor lines meet at
[0:0:0:1] (the apex); the limit points sit on the conductors ordered by
their x3 value and each weighted line joins its two points, drawn thicker
with higher multiplicity. Irreducible cubics: line/node incidence grid.
"""

from backend.cubic_pairs import ThreePlanes, format_point, incidence_points, schlafli_meets
from frontend.components.report_view import render_template

PANEL_WIDTH = 300
PANEL_HEIGHT = 280
MARGIN = 30


class DiagramError(ValueError):
    """Unknown diagram format"""


def incidence_diagram(cfg, fmt="ascii"):
    """
    Diagram of a PairConfig.

    Args:
        cfg: PairConfig from cubic_pairs.stratum_config
        fmt: "ascii" or "svg"

    Returns:
        the diagram as text
    """
    if fmt == "ascii":
        return ascii_diagram(cfg)
    if fmt == "svg":
        return svg_diagram(cfg)
    raise DiagramError(f"unknown diagram format {fmt!r}; use ascii or svg")


# ------------------------------------------------------------
# ASCII
# ------------------------------------------------------------

def _grid(row_labels, col_labels, marks):
    width = max(len(r) for r in row_labels) if row_labels else 4
    cell = max(3, max((len(c) for c in col_labels), default=1) + 1)
    out = [" " * width + " " + "".join(c.rjust(cell) for c in col_labels)]
    for label, row in zip(row_labels, marks):
        out.append(label.ljust(width) + " " + "".join(m.rjust(cell) for m in row))
    return out


def _plane_ascii(cfg, plane, points):
    lines = cfg.plane_lines(plane)
    out = [f"Plane x{plane} = 0: {len(lines)} lines, multiplicity {sum(wl.multiplicity for wl in lines)}"]
    cols = [f"P{k}" for k in range(1, len(points) + 1)]
    rows = [f"{wl.label} x{wl.multiplicity}" for wl in lines] + ["conductor"]
    marks = [["x" if wl.label in ip.lines else "." for ip in points] for wl in lines]
    marks.append([str(ip.conductor) if ip.conductor else "." for ip in points])
    out += _grid(rows, cols, marks)
    for k, ip in enumerate(points, start=1):
        out.append(f"  P{k} = {ip.name}: {ip.branches} branches")
    return out


def ascii_diagram(cfg):
    points = incidence_points(cfg)
    header = f"{cfg.stratum}: {len(cfg.lines)} lines, census {cfg.census()}, c = {cfg.coefficient}"
    out = [header, ""]
    if isinstance(cfg.surface, ThreePlanes):
        for plane in cfg.surface.planes:
            out += _plane_ascii(cfg, plane, [ip for ip in points if ip.plane == plane])
            out.append("")
    elif cfg.is_combinatorial:
        labels = [wl.label for wl in cfg.lines]
        marks = [["x" if schlafli_meets(a, b) else "." for b in labels] for a in labels]
        out += _grid(labels, labels, marks)
        out.append(f"{len(points)} intersection points, two lines each")
    else:
        nodes = [ip for ip in points if ip.singular]
        cols = [f"N{k}" for k in range(1, len(nodes) + 1)] + ["meets"]
        rows, marks = [], []
        for wl in cfg.lines:
            rows.append(f"{wl.label} x{wl.multiplicity}")
            meets = sum(1 for ip in points if wl.label in ip.lines and len(ip.lines) >= 2)
            marks.append(["o" if wl.label in ip.lines else "." for ip in nodes] + [str(meets)])
        out += _grid(rows, cols, marks)
        for k, ip in enumerate(nodes, start=1):
            out.append(f"  N{k} = {ip.name}: {len(ip.lines)} lines")
    return "\n".join(out).rstrip() + "\n"


# ------------------------------------------------------------
# SVG
# ------------------------------------------------------------

def _edge_positions(values, start, end):
    """Distinct values spaced along the segment start -> end, apex excluded"""
    distinct = sorted(set(values))
    pos = {}
    for k, v in enumerate(distinct, start=1):
        t = k / (len(distinct) + 1)
        pos[v] = (start[0] + t * (end[0] - start[0]), start[1] + t * (end[1] - start[1]))
    return pos


_FAMILY = "ABC"


def _conductor_values(cfg, plane, wl):
    """{family letter: x3 value} of the points where a line meets the two conductors"""
    out = {}
    for conductor in cfg.surface.conductor(plane):
        p = wl.line.meet(conductor)
        k = next(k for k in range(3) if p[k] != 0)
        out[_FAMILY[k]] = p[3] / p[k]
    return out


def _plane_panel(cfg, plane, x0):
    apex = (x0 + PANEL_WIDTH / 2, MARGIN + 20)
    left = (x0 + MARGIN, PANEL_HEIGHT - MARGIN)
    right = (x0 + PANEL_WIDTH - MARGIN, PANEL_HEIGHT - MARGIN)
    u, v = [f for f in _FAMILY if f != _FAMILY[plane]]
    lines = cfg.plane_lines(plane)

    # family -> x3 value -> point names, e.g. A1 and A3 coincide when lambda = 0
    names = {u: {}, v: {}}
    ends = []
    for wl in lines:
        values = _conductor_values(cfg, plane, wl)
        for label in wl.label.split("+"):
            names[u].setdefault(values[u], set()).add(label[:2])
            names[v].setdefault(values[v], set()).add(label[2:])
        ends.append((wl, values[u], values[v]))
    u_pos = _edge_positions(names[u], apex, left)
    v_pos = _edge_positions(names[v], apex, right)

    panel = {"title": f"x{plane} = 0", "title_x": x0 + PANEL_WIDTH / 2, "lines": [], "circles": [], "texts": []}
    for corner in (left, right):
        panel["lines"].append({"x1": apex[0], "y1": apex[1], "x2": corner[0], "y2": corner[1],
                               "width": 1, "cls": "conductor"})
    panel["circles"].append({"cx": apex[0], "cy": apex[1], "r": 4, "cls": "apex"})
    panel["texts"].append({"x": apex[0], "y": apex[1] - 8, "text": "[0:0:0:1]", "anchor": "middle"})

    for wl, a, b in ends:
        (x1, y1), (x2, y2) = u_pos[a], v_pos[b]
        panel["lines"].append({"x1": x1, "y1": y1, "x2": x2, "y2": y2,
                               "width": 1 + 1.5 * (wl.multiplicity - 1), "cls": f"mult{min(wl.multiplicity, 4)}"})
    for family, pos, anchor, dx in ((u, u_pos, "end", -8), (v, v_pos, "start", 8)):
        for value, (x, y) in pos.items():
            panel["circles"].append({"cx": x, "cy": y, "r": 3, "cls": "point"})
            panel["texts"].append({"x": x + dx, "y": y + 4, "text": "=".join(sorted(names[family][value])),
                                   "anchor": anchor})
    return panel


def _grid_panel(cfg):
    points = incidence_points(cfg)
    nodes = [ip for ip in points if ip.singular]
    step = 22
    panel = {"title": f"{cfg.stratum}: lines through nodes", "title_x": PANEL_WIDTH / 2,
             "lines": [], "circles": [], "texts": []}
    for j, ip in enumerate(nodes):
        panel["texts"].append({"x": 120 + j * step * 2, "y": MARGIN + 30, "text": f"N{j + 1}", "anchor": "middle"})
    for i, wl in enumerate(cfg.lines):
        y = MARGIN + 50 + i * step
        panel["texts"].append({"x": 10, "y": y + 4, "text": f"{wl.label} x{wl.multiplicity}", "anchor": "start"})
        for j, ip in enumerate(nodes):
            filled = wl.label in ip.lines
            panel["circles"].append({"cx": 120 + j * step * 2, "cy": y, "r": 5 if filled else 2,
                                     "cls": "point" if filled else "empty"})
    return panel, MARGIN + 80 + len(cfg.lines) * step


def svg_diagram(cfg):
    if isinstance(cfg.surface, ThreePlanes):
        panels = [_plane_panel(cfg, plane, k * PANEL_WIDTH) for k, plane in enumerate(cfg.surface.planes)]
        width, height = PANEL_WIDTH * len(panels), PANEL_HEIGHT
    else:
        if cfg.is_combinatorial:
            raise DiagramError("the smooth stratum has no coordinates to draw; use the ascii format")
        panel, height = _grid_panel(cfg)
        panels, width = [panel], max(PANEL_WIDTH, 160 + 44 * len(cfg.surface.nodes))
    return render_template("incidence.svg.j2", width=width, height=height, panels=panels,
                           title=f"{cfg.stratum} incidence, c = {cfg.coefficient}",
                           nodes=[format_point(p) for p in getattr(cfg.surface, "nodes", ())])
