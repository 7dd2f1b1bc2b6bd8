#!/usr/bin/env python3
"""Render the five reference figure configurations to demos/output/.

Each is the real locus of a generated member with its marked points and
auxiliary lines/conics overlaid; the SVG output is byte-deterministic.
"""

import os

from k2forge.cli import main

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "output")
os.makedirs(OUT, exist_ok=True)

FIGURES = [
    ("fig1_hyperelliptic", "hyp-odd",
     ["--genus", "2", "--a", "1,1/2,1/4"], "-0.5,1.5,-1.5,1.1"),
    ("fig2_quartic_member0", "quartic-ct", ["--t", "0"], "-0.6,0.6,-0.6,0.3"),
    ("fig3_quartic_lines", "quartic-lines",
     ["--a", "1/2", "--b", "-1", "--c", "0"], "-0.6,0.6,-0.6,0.3"),
    ("fig4_quartic_conic", "quartic-conic-pq",
     ["--a", "1/2", "--b", "-1"], "-0.6,0.6,-0.5,0.4"),
    ("fig5_genus2_contact", "nekovar-g2", ["--r", "1/2"], "-1.2,1.6,-1.6,1.2"),
]

for name, family, flags, window in FIGURES:
    rec = os.path.join(OUT, f"{name}.json")
    svg = os.path.join(OUT, f"{name}.svg")
    code = main(["gen", family, *flags, "--out", rec])
    assert code == 0, f"gen {family} failed"
    code = main(["plot", rec, f"--window={window}", "--grid", "256",
                 "--out", svg])
    assert code == 0, f"plot {family} failed"
    print(f"{name}: {svg}")

print(f"\nall five figures written under {OUT}")
