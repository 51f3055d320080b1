#!/usr/bin/env python3
"""Generates the bundled fixture maps and scenarios.

Usage: make_fixtures.py [FIXTURE_DIR]   (default: ../fixtures next to this file)
"""

import json
import math
import pathlib
import sys


def rect(x0, x1, y0, y1):
    return [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]


def curb_strip(x0, x1, y_in, depth, side, piece=10.0):
    """Convex curb pieces along y = y_in, extending away from the road."""
    out = []
    x = x0
    while x < x1 - 1e-9:
        xe = min(x + piece, x1)
        if side > 0:
            out.append(rect(x, xe, y_in, y_in + depth))
        else:
            out.append(rect(x, xe, y_in - depth, y_in))
        x = xe
    return out


def edge(eid, frm, to, pts, tag="common", speed=4.17, left=3.0, right=3.0):
    return {"id": eid, "from": frm, "to": to, "polyline": pts, "tag": tag,
            "speed_limit": speed, "half_width_left": left, "half_width_right": right}


def map_doc(nodes, edges, stations, curbs, stop_lines=(), areas=()):
    return {
        "schema_version": 1,
        "nodes": [{"id": i, "x": p[0], "y": p[1]} for i, p in enumerate(nodes)],
        "edges": edges,
        "stations": [{"name": n, "edge": e, "s": s} for n, e, s in stations],
        "observation_areas": [{"edge": e, "polygons": polys} for e, polys in areas],
        "stop_lines": [{"edge": e, "s": s} for e, s in stop_lines],
        "curbs": curbs,
    }


def straight_map():
    nodes = [[0.0, 0.0], [150.0, 0.0]]
    edges = [edge(0, 0, 1, nodes)]
    curbs = curb_strip(0, 150, 3.0, 0.5, +1) + curb_strip(0, 150, -3.0, 0.5, -1)
    stations = [("West", 0, 5.0), ("Mid", 0, 60.0), ("Library", 0, 75.0), ("East", 0, 130.0)]
    return map_doc(nodes, edges, stations, curbs)


def turn_map():
    r = 6.0
    cx, cy = 40.0, r
    arc = [[cx + r * math.sin(a), cy - r * math.cos(a)]
           for a in (i * (math.pi / 2) / 90 for i in range(91))]
    arc[0] = [40.0, 0.0]
    arc[-1] = [46.0, 6.0]
    nodes = [[0.0, 0.0], [40.0, 0.0], [46.0, 6.0], [46.0, 50.0]]
    edges = [edge(0, 0, 1, [nodes[0], nodes[1]]),
             edge(1, 1, 2, arc),
             edge(2, 2, 3, [nodes[2], nodes[3]])]
    curbs = (curb_strip(0, 36, 3.0, 0.5, +1) + curb_strip(0, 40, -3.0, 0.5, -1)
             + [rect(49.0, 49.5, y, y + 10) for y in (0.0, 10.0, 20.0, 30.0, 40.0)]
             + [rect(42.5, 43.0, y, y + 10) for y in (10.0, 20.0, 30.0, 40.0)])
    stations = [("Start", 0, 5.0), ("North", 2, 30.0)]
    return map_doc(nodes, edges, stations, curbs)


def parking_map():
    nodes = [[0.0, 0.0], [20.0, 0.0], [70.0, 0.0], [90.0, 0.0]]
    edges = [edge(0, 0, 1, [nodes[0], nodes[1]]),
             edge(1, 1, 2, [nodes[1], nodes[2]], tag="parking", left=3.5, right=3.5),
             edge(2, 2, 3, [nodes[2], nodes[3]])]
    curbs = curb_strip(0, 90, 4.0, 0.5, +1) + curb_strip(0, 90, -4.0, 0.5, -1)
    stations = [("Gate", 0, 5.0), ("Lot", 2, 12.0)]
    return map_doc(nodes, edges, stations, curbs)


def intersection_map():
    nodes = [[0.0, 0.0], [60.0, 0.0], [80.0, 0.0], [130.0, 0.0]]
    edges = [edge(0, 0, 1, [nodes[0], nodes[1]], speed=2.0),
             edge(1, 1, 2, [nodes[1], nodes[2]], tag="intersection", speed=2.0),
             edge(2, 2, 3, [nodes[2], nodes[3]])]
    curbs = (curb_strip(0, 60, 3.0, 0.5, +1) + curb_strip(0, 60, -3.0, 0.5, -1)
             + curb_strip(80, 130, 3.0, 0.5, +1) + curb_strip(80, 130, -3.0, 0.5, -1))
    stations = [("South", 0, 5.0), ("Plaza", 2, 30.0)]
    area = rect(66.0, 74.0, -60.0, 8.0)
    return map_doc(nodes, edges, stations, curbs, stop_lines=[(1, 1.0)], areas=[(1, [area])])


def narrow_map():
    nodes = [[0.0, 0.0], [40.0, 0.0], [70.0, 0.0], [110.0, 0.0]]
    edges = [edge(0, 0, 1, [nodes[0], nodes[1]]),
             edge(1, 1, 2, [nodes[1], nodes[2]], speed=2.5, left=1.6, right=1.6),
             edge(2, 2, 3, [nodes[2], nodes[3]])]
    curbs = (curb_strip(0, 40, 3.0, 0.5, +1) + curb_strip(0, 40, -3.0, 0.5, -1)
             + curb_strip(40, 70, 1.6, 1.4, +1) + curb_strip(40, 70, -1.6, 1.4, -1)
             + curb_strip(70, 110, 3.0, 0.5, +1) + curb_strip(70, 110, -3.0, 0.5, -1))
    stations = [("Quad", 0, 5.0), ("Lab", 2, 25.0)]
    return map_doc(nodes, edges, stations, curbs)


def agent(aid, cls, motion, length=0.5, width=0.5):
    return {"id": aid, "class": cls, "length": length, "width": width, "motion": motion}


def cv(pos, vel, start=0.0, end=1e9):
    return {"type": "constant_velocity", "position": pos, "velocity": vel,
            "start_time": start, "end_time": end}


def scenario(name, map_file, ego, goal, duration, seed=1, **extra):
    doc = {"schema_version": 1, "name": name, "map": f"../maps/{map_file}", "ego": ego,
           "goal": goal, "seed": seed, "duration": duration}
    doc.update(extra)
    return doc


CYC_Y = 79.0


def scenarios():
    out = {}
    out["straightaway"] = scenario("straightaway", "straight.json",
                                   {"edge": 0, "s": 5.0, "v": 0.0}, "East", 90.0)
    out["turn"] = scenario("turn", "turn.json", {"edge": 0, "s": 5.0, "v": 0.0}, "North", 90.0)
    out["parking"] = scenario(
        "parking", "parking.json", {"edge": 0, "s": 5.0, "v": 0.0}, "Lot", 90.0,
        agents=[agent(1, "vehicle", cv([35.0, 2.4], [0.0, 0.0]), length=4.5, width=1.8),
                agent(2, "vehicle", cv([52.0, -2.5], [0.0, 0.0]), length=4.5, width=1.8),
                agent(3, "pedestrian", cv([60.0, 3.3], [-0.8, 0.0], 0.0, 30.0))],
        noise={"position_sigma": 0.03, "velocity_sigma": 0.03})
    out["intersection"] = scenario(
        "intersection", "intersection.json", {"edge": 0, "s": 5.0, "v": 2.0}, "Plaza", 90.0,
        agents=[agent(1, "cyclist", cv([70.0, -CYC_Y], [0.0, 2.5], 0.0, 60.0),
                      length=1.8, width=0.6)])
    out["jaywalker"] = scenario(
        "jaywalker", "straight.json", {"edge": 0, "s": 5.0, "v": 0.0}, "East", 90.0,
        agents=[agent(1, "pedestrian", cv([55.0, -6.0], [0.0, 1.2], 12.0, 22.0))],
        noise={"position_sigma": 0.05, "velocity_sigma": 0.05})
    out["tree_shade"] = scenario(
        "tree_shade", "straight.json", {"edge": 0, "s": 5.0, "v": 0.0}, "East", 90.0,
        noise={"boundary_jitter": 0.3})
    out["localization"] = scenario(
        "localization", "straight.json", {"edge": 0, "s": 5.0, "v": 0.0}, "East", 150.0,
        localization=[[0.0, 0.05], [10.0, 0.05], [22.0, 0.7], [40.0, 0.7], [46.0, 0.1]])
    out["dropoff"] = scenario(
        "dropoff", "straight.json", {"edge": 0, "s": 5.0, "v": 0.0}, "East", 120.0,
        events=[{"t": 12.0, "type": "dropoff_button"}])
    out["dwell_resume"] = scenario(
        "dwell_resume", "straight.json", {"edge": 0, "s": 5.0, "v": 0.0}, "East", 150.0,
        stops=["Mid"],
        agents=[agent(1, "pedestrian",
                      {"type": "waypoints",
                       "waypoints": [[0.0, 62.0, -2.6], [40.0, 62.0, -2.6], [45.0, 62.0, -8.6]]})])
    out["narrow_corridor"] = scenario(
        "narrow_corridor", "narrow.json", {"edge": 0, "s": 5.0, "v": 0.0}, "Lab", 90.0)
    return out


def main():
    root = (pathlib.Path(sys.argv[1]) if len(sys.argv) > 1
            else pathlib.Path(__file__).resolve().parent.parent / "fixtures")
    maps = {"straight.json": straight_map(), "turn.json": turn_map(),
            "parking.json": parking_map(), "intersection.json": intersection_map(),
            "narrow.json": narrow_map()}
    (root / "maps").mkdir(parents=True, exist_ok=True)
    (root / "scenarios").mkdir(parents=True, exist_ok=True)
    for name, doc in maps.items():
        (root / "maps" / name).write_text(json.dumps(doc, indent=1) + "\n")
    for name, doc in scenarios().items():
        (root / "scenarios" / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
