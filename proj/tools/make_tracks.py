#!/usr/bin/env python3
"""Regenerates the bundled benchmark tracks in tracks/.

Each track is a JSON file with wall segments, a centerline for course
progress, a start pose and a finish distance. Walls are built by offsetting
the centerline sideways and closing the ends, so the commit-checked files can
always be reproduced from this script.
"""

import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, os.pardir, "tracks")


def offset_walls(centerline, half_width, close_start=True, close_end=True):
    """Left/right offset polylines stitched into wall segments."""
    left, right = [], []
    n = len(centerline)
    for i, (x, y) in enumerate(centerline):
        if i == 0:
            dx, dy = centerline[1][0] - x, centerline[1][1] - y
        elif i == n - 1:
            dx, dy = x - centerline[i - 1][0], y - centerline[i - 1][1]
        else:
            dx = centerline[i + 1][0] - centerline[i - 1][0]
            dy = centerline[i + 1][1] - centerline[i - 1][1]
        norm = math.hypot(dx, dy)
        nx, ny = -dy / norm, dx / norm  # left normal
        left.append((x + nx * half_width, y + ny * half_width))
        right.append((x - nx * half_width, y - ny * half_width))
    walls = []
    for side in (left, right):
        for a, b in zip(side, side[1:]):
            walls.append([list(a), list(b)])
    if close_start:
        walls.append([list(left[0]), list(right[0])])
    if close_end:
        walls.append([list(left[-1]), list(right[-1])])
    return walls


def arc(cx, cy, radius, a0, a1, steps):
    return [
        (cx + radius * math.cos(a0 + (a1 - a0) * i / steps),
         cy + radius * math.sin(a0 + (a1 - a0) * i / steps))
        for i in range(1, steps + 1)
    ]


def polyline_length(points):
    return sum(math.dist(a, b) for a, b in zip(points, points[1:]))


def corridor():
    """Straight 200 m corridor, 10 m wide; the desk-scale benchmark track."""
    walls = [
        [[-10.0, -5.0], [220.0, -5.0]],
        [[-10.0, 5.0], [220.0, 5.0]],
        [[-10.0, -5.0], [-10.0, 5.0]],
        [[220.0, -5.0], [220.0, 5.0]],
    ]
    return {
        "name": "corridor",
        "walls": walls,
        "centerline": [[0.0, 0.0], [210.0, 0.0]],
        "start": {"pos": [0.0, 0.0], "yaw": 0.0},
        "finish_s": 200.0,
        "half_width": 5.0,
    }


def s_curve():
    """40 m run-up, 45 deg left arc, short link, 45 deg right arc, run-out."""
    r = 40.0
    turn = math.pi / 4
    pts = [(-8.0, 0.0), (0.0, 0.0), (40.0, 0.0)]
    # left arc: center above the entry point
    pts += arc(40.0, r, r, -math.pi / 2, -math.pi / 2 + turn, 10)
    # link segment along the 45 deg heading
    hx, hy = math.cos(turn), math.sin(turn)
    lx, ly = pts[-1]
    pts += [(lx + 25.0 * hx, ly + 25.0 * hy)]
    # right arc bends back to straight; center sits to the right of the heading
    cx = pts[-1][0] + r * hy
    cy = pts[-1][1] - r * hx
    pts += arc(cx, cy, r, math.pi / 2 + turn, math.pi / 2, 10)
    lx, ly = pts[-1]
    pts += [(lx + 40.0, ly)]
    length = polyline_length(pts)
    return {
        "name": "s_curve",
        "walls": offset_walls(pts, 5.0),
        "centerline": [list(p) for p in pts],
        "start": {"pos": [0.0, 0.0], "yaw": 0.0},
        "finish_s": round(length - 12.0, 3),
        "half_width": 5.0,
    }


def circuit():
    """Stadium loop: two straights joined by 30 m radius turns.

    A start/finish wall crosses the ribbon just behind the spawn, and the
    centerline stops short of it, so driving backward past the start crashes
    instead of projecting onto the far end of the lap.
    """
    r = 30.0
    half = 40.0
    loop = [(0.0, -r), (half, -r)]
    loop += arc(half, 0.0, r, -math.pi / 2, math.pi / 2, 24)
    loop += [(-half, r)]
    loop += arc(-half, 0.0, r, math.pi / 2, 3 * math.pi / 2, 24)
    loop += [(0.0, -r)]
    walls = offset_walls(loop, 5.0, close_start=False, close_end=False)
    walls.append([[-3.0, -r - 5.0], [-3.0, -r + 5.0]])  # start/finish wall

    centerline = loop[:-1] + [(-4.0, -r)]  # open: ends 4 m before the spawn
    length = polyline_length(centerline)
    return {
        "name": "circuit",
        "walls": walls,
        "centerline": [list(p) for p in centerline],
        "start": {"pos": [0.0, -r], "yaw": 0.0},
        "finish_s": round(length - 2.0, 3),
        "half_width": 5.0,
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    for track in (corridor(), s_curve(), circuit()):
        path = os.path.join(OUT, track["name"] + ".json")
        with open(path, "w") as f:
            json.dump(track, f, indent=1)
            f.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
