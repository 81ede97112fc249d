"""Regenerate the bundled JSON corpus under src/macbelt/data."""

import json
from pathlib import Path

from macbelt.complex import SimplicialComplex, dual_polytope
from macbelt.corpus import (complex_json, distinct_fullerene_duals, icosahedron, polytope_json, tower,
                            truncate_dual)

OUT = Path(__file__).resolve().parents[1] / "src" / "macbelt" / "data"


def cyc(n):
    return [[i, i % n + 1] for i in range(1, n + 1)]


def main():
    octa = SimplicialComplex.build(6, [[a, b, c] for a in (1, 4) for b in (2, 5) for c in (3, 6)])
    ico = icosahedron()
    tet = SimplicialComplex.build(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
    complexes = {
        "square": SimplicialComplex.build(4, cyc(4)),
        "pentagon": SimplicialComplex.build(5, cyc(5)),
        "octahedron": octa,
        "icosahedron": ico,
        "disk": SimplicialComplex.build(6, [[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 6]]),
        "path": SimplicialComplex.build(4, [[1, 2], [2, 3], [3, 4]]),
        "wedge": SimplicialComplex.build(5, [[1, 2], [2, 3], [1, 3], [3, 4], [4, 5], [3, 5]]),
        "simplex": SimplicialComplex.build(3, [[1, 2, 3]]),
        "tetrahedron_boundary": tet,
        "s0": SimplicialComplex.build(2, [[1], [2]]),
        "triangle": SimplicialComplex.build(3, cyc(3)),
    }
    # the tubular isomer is the first spiral hit; the second is a different isomer
    c40 = distinct_fullerene_duals(40, 2)
    polytopes = {
        "cube": dual_polytope(octa),
        "tetrahedron": dual_polytope(tet),
        "dodecahedron": dual_polytope(ico),
        "c60": truncate_dual(ico),
        "c40_a": dual_polytope(tower(4)),
        "c40_b": dual_polytope(c40[1]),
    }
    for name, K in complexes.items():
        (OUT / f"{name}.json").write_text(json.dumps(complex_json(K)) + "\n")
    for name, P in polytopes.items():
        (OUT / f"{name}.json").write_text(json.dumps(polytope_json(P)) + "\n")


if __name__ == "__main__":
    main()
