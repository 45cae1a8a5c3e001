#!/usr/bin/env python3
"""Regenerate the checked-in manifests under manifests/.

Run from the repo root:  python tools/make_fixtures.py
"""

from __future__ import annotations

import math
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "manifests"

CENTER = (0.5, 0.5)


def rnd(v: float) -> float:
    return round(v, 4)


def rotate(strokes, steps45: int):
    theta = math.radians(45 * steps45)
    c, s = math.cos(theta), math.sin(theta)
    cx, cy = CENTER
    return [
        [(rnd(cx + (x - cx) * c - (y - cy) * s),
          rnd(cy + (x - cx) * s + (y - cy) * c)) for x, y in stroke]
        for stroke in strokes
    ]


def mirror(strokes):
    return [[(rnd(1 - x), y) for x, y in stroke] for stroke in strokes]


def path(strokes) -> str:
    return ";".join(" ".join(f"{rnd(x):g},{rnd(y):g}" for x, y in stroke)
                    for stroke in strokes)


def arc(cx, cy, r, a0, a1, n=8):
    pts = []
    for i in range(n + 1):
        a = math.radians(a0 + (a1 - a0) * i / n)
        pts.append((rnd(cx + r * math.cos(a)), rnd(cy + r * math.sin(a))))
    return pts


def line(records, ref, name, status, taxonomy, tags, motion, strokes):
    tags_text = ",".join(sorted(tags)) if tags else "-"
    records.append("\t".join([ref, name, status, *taxonomy, tags_text,
                              motion or "-", path(strokes)]))


PLANES = ("V", "H", "S_down", "S_lateral")


def plane_decor(plane):
    if plane == "V":
        return []
    if plane == "H":
        # long second stem, crossing whatever it overlaps by design
        return [[(0.58, 0.85), (0.58, 0.25)]]
    if plane == "S_down":
        return [[(0.4, 0.85), (0.6, 0.85)]]
    return [[(0.4, 0.85), (0.6, 0.85)], [(0.4, 0.92), (0.6, 0.92)]]


def rep_marks(rep):
    marks = []
    for i in range(rep - 1):
        y = 0.34 + 0.13 * i
        marks.append([(0.4, y + 0.13), (0.5, y), (0.6, y + 0.13)])
    return marks


def make_demo() -> str:
    records = []

    # hands / fingers / index: a full 16-rotation x 2-fill family
    palm = [(0.35, 0.55), (0.65, 0.55), (0.65, 0.85), (0.35, 0.85),
            (0.35, 0.55)]
    finger = [(0.5, 0.55), (0.5, 0.15)]
    tip = [(0.5, 0.15), (0.58, 0.22)]
    diag = [(0.35, 0.55), (0.65, 0.85)]  # corner to corner, touching
    for fill in (1, 2):
        base = [palm, finger, tip] + ([diag] if fill == 2 else [])
        for rotation in range(1, 17):
            strokes = base
            if rotation > 8:
                strokes = mirror(strokes)
            strokes = rotate(strokes, (rotation - 1) % 8)
            ref = f"01-01-001-01-{fill:02d}-{rotation:02d}"
            line(records, ref, f"index-f{fill}-r{rotation}", "official-2004",
                 ("hands", "fingers", "index"), {"hand-config"}, None, strokes)

    # hands / fingers / pinch-open; fingers start on fist vertices
    fist = arc(0.45, 0.6, 0.2, 30, 330)
    pinch = [fist,
             [fist[7], (0.58, 0.15)],   # 292.5 degrees
             [fist[8], (0.75, 0.24)],   # 330 degrees
             [fist[0], (0.86, 0.5)]]    # 30 degrees
    line(records, "01-01-002-01-01-01", "pinch-open", "official-2004",
         ("hands", "fingers", "pinch"), {"hand-config"}, None, pinch)

    # hands / flats / flat
    flat = [[(0.3, 0.2), (0.7, 0.2), (0.7, 0.8), (0.3, 0.8), (0.3, 0.2)]]
    line(records, "01-02-001-01-01-01", "flat-f1", "official-2004",
         ("hands", "flats", "flat"), {"hand-config"}, None, flat)
    line(records, "01-02-001-01-02-01", "flat-f2", "official-2004",
         ("hands", "flats", "flat"), {"hand-config"}, None,
         flat + [[(0.3, 0.2), (0.7, 0.8)]])

    # movement / straight / arrows: closed over all 4 planes x reps 1..2
    shaft = [(0.5, 0.85), (0.5, 0.2)]
    head = [(0.4, 0.33), (0.5, 0.2), (0.6, 0.33)]
    base_no = 0
    for plane in PLANES:
        for rep in (1, 2):
            base_no += 1
            strokes = [shaft, head] + rep_marks(rep) + plane_decor(plane)
            ref = f"02-01-{base_no:03d}-01-01-01"
            line(records, ref, f"straight-{plane}-r{rep}", "official-2004",
                 ("movement", "straight", "arrows"), {"motion"},
                 f"straight:{plane}:{rep}", strokes)

    # movement / forearm / twists: arc crossed by a full-width bar;
    # plane ticks start on arc vertices so they touch by design
    twist_arc = arc(0.5, 0.5, 0.25, 180, 360)
    bar = [(0.1, 0.5), (0.9, 0.5)]
    ticks = {"V": [], "H": [[twist_arc[4], (0.5, 0.16)]],
             "S_down": [[twist_arc[1], (0.19, 0.32)]],
             "S_lateral": [[twist_arc[7], (0.81, 0.32)]]}
    for i, plane in enumerate(PLANES, start=1):
        strokes = [twist_arc, bar] + ticks[plane]
        ref = f"02-02-{i:03d}-01-01-01"
        line(records, ref, f"twist-{plane}", "official-2004",
             ("movement", "forearm", "twists"), {"forearm", "motion"},
             f"twist:{plane}:1", strokes)

    # head / face / circle
    face = [arc(0.5, 0.5, 0.32, 0, 360, n=16)]
    line(records, "04-01-001-01-01-01", "face", "official-2004",
         ("head", "face", "circle"), {"face-circle"}, None, face)

    # head / nods / arcs: anchored over the face circle when placed
    nod = [arc(0.5, 0.72, 0.38, 200, 340)]
    line(records, "04-02-001-01-01-01", "head-nod-arc", "official-2004",
         ("head", "nods", "arcs"), {"head-movement", "head-anchored"},
         None, nod)
    nod2 = [arc(0.5, 0.75, 0.3, 205, 335), [(0.42, 0.3), (0.5, 0.22),
                                            (0.58, 0.3)]]
    line(records, "04-02-002-01-01-01", "head-nod-arc-double",
         "official-2008", ("head", "nods", "arcs"),
         {"head-movement", "head-anchored"}, None, nod2)

    # annotation / markers / gaze: curve with an i-like stem over it
    gaze = [arc(0.5, 0.62, 0.3, 200, 340),
            [(0.5, 0.38), (0.5, 0.24)],
            [(0.48, 0.14), (0.52, 0.17)]]
    line(records, "07-01-001-01-01-01", "gaze-at-interlocutor",
         "official-2008", ("annotation", "markers", "gaze"),
         {"annotation", "gaze-on-interlocutor"}, None, gaze)

    header = [
        "# synthetic demo catalog - regenerate with tools/make_fixtures.py",
        "!version demo-0.1",
        "!plane-edit V H rot90",
        "!plane-edit H V rot270",
        "!plane-edit V S_down flipy",
        "!plane-edit S_down V flipy",
    ]
    return "\n".join(header + records) + "\n"


def make_motion_gaps() -> str:
    """A curve family present at S_down for all three repetitions but
    only the first two elsewhere; completion must add exactly the
    three missing third repetitions."""
    records = []
    curve = arc(0.3, 0.7, 0.45, 270, 360, n=6)

    def gap_rep_marks(rep):
        # chevrons trail the curve's end, clear of everything else
        return [[(0.62, 0.78 + 0.11 * i + 0.08), (0.7, 0.78 + 0.11 * i),
                 (0.78, 0.78 + 0.11 * i + 0.08)] for i in range(rep - 1)]

    def gap_decor(plane):
        if plane == "V":
            return []
        if plane == "H":
            return [[(0.58, 0.25), (0.58, 0.75)]]  # crosses the curve
        if plane == "S_down":
            return [[(0.25, 0.85), (0.45, 0.85)]]
        return [[(0.25, 0.85), (0.45, 0.85)], [(0.25, 0.92), (0.45, 0.92)]]

    reps_by_plane = {"S_down": (1, 2, 3), "V": (1, 2), "H": (1, 2),
                     "S_lateral": (1, 2)}
    base_no = 0
    for plane in ("S_down", "V", "H", "S_lateral"):
        for rep in reps_by_plane[plane]:
            base_no += 1
            strokes = [curve] + gap_rep_marks(rep) + gap_decor(plane)
            ref = f"02-01-{base_no:03d}-01-01-01"
            line(records, ref, f"curve-{plane}-r{rep}", "official-2008",
                 ("movement", "curves", "quarter-arcs"), {"motion"},
                 f"curve:{plane}:{rep}", strokes)
    header = [
        "# curve family with plane gaps - regenerate with tools/make_fixtures.py",
        "!version gaps-0.1",
    ]
    return "\n".join(header + records) + "\n"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    (OUT / "demo.tsv").write_text(make_demo(), encoding="utf-8")
    (OUT / "motion_gaps.tsv").write_text(make_motion_gaps(), encoding="utf-8")
    print(f"wrote {OUT / 'demo.tsv'}")
    print(f"wrote {OUT / 'motion_gaps.tsv'}")


if __name__ == "__main__":
    main()
