"""macbelt command line: corpus inspection, ring invariants and rigidity reports.

Exit codes: 0 success, 1 a precondition failed, 2 malformed input or usage.
JSON goes to stdout with sorted keys; timing and progress go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import canon, corpus
from .cohomology import is_gorenstein_star
from .complex import (ComplexError, SimplePolytope3, SimplicialComplex, complex_from_json, dualize_simple_polytope,
                      is_fullerene, lbt_bound, mask_of, polytope_from_json, vertices_of)
from .invariants import UnsupportedField, annihilator_dim, divides, four_belt_via_ring
from .linalg import Field
from .macring import MacRing, betti_report
from . import rigidity

log = logging.getLogger("macbelt")


class InputError(Exception):
    """Malformed input: exit code 2."""


class Precondition(Exception):
    """A named check failed: exit code 1."""


# -- input ---------------------------------------------------------------------

def _read_input(spec: str):
    """(name, raw bytes, parsed json) from a path or a bundled corpus name."""
    p = Path(spec)
    if p.is_file():
        try:
            raw = p.read_bytes()
        except OSError as e:
            raise InputError(f"cannot read {spec}: {e}")
        name = p.name
    else:
        stem = spec[:-5] if spec.endswith(".json") else spec
        if stem not in corpus.bundled_names():
            raise InputError(f"no such file or bundled corpus entry: {spec}")
        raw = (json.dumps(corpus._read(stem)) + "\n").encode()
        name = stem + ".json"
    try:
        data = json.loads(raw)
    except (ValueError, UnicodeDecodeError) as e:
        raise InputError(f"{spec}: not valid JSON ({e})")
    return name, raw, data


def load_object(spec: str):
    name, raw, data = _read_input(spec)
    try:
        if isinstance(data, dict) and corpus.is_polytope_data(data):
            obj = polytope_from_json(data)
        else:
            obj = complex_from_json(data)
    except (ComplexError, TypeError, ValueError) as e:
        raise InputError(f"{spec}: {e}")
    return obj, {"name": name, "sha256": hashlib.sha256(raw).hexdigest()}


def load_sphere_or_complex(spec: str):
    obj, meta = load_object(spec)
    if isinstance(obj, SimplePolytope3):
        try:
            K = dualize_simple_polytope(obj)
        except ComplexError as e:
            raise InputError(f"{spec}: {e}")
        meta["dualized"] = True
        return K, meta, obj
    return obj, meta, None


def complex_digest(K: SimplicialComplex) -> str:
    return hashlib.sha256(json.dumps({"m": K.m, "facets": K.facet_lists()}).encode()).hexdigest()


# -- optional persisted Betti cache --------------------------------------------

def _cache_path(K: SimplicialComplex, field: Field) -> Optional[Path]:
    d = os.environ.get("MACBELT_CACHE_DIR")
    if not d:
        return None
    return Path(d) / f"{complex_digest(K)}-{field.name}.json"


def make_ring(K: SimplicialComplex, field: Field) -> MacRing:
    R = MacRing(K, field)
    path = _cache_path(K, field)
    if path and path.is_file():
        try:
            table = json.loads(path.read_text())
            R.preload_betti({int(I): b for I, b in table.items()})
            log.info("loaded %d cached summands from %s", len(table), path)
        except (OSError, ValueError):
            log.warning("ignoring unreadable cache %s", path)
    return R


def save_ring(R: MacRing) -> None:
    path = _cache_path(R.complex, R.field)
    if not path:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({str(I): b for I, b in sorted(R._betti.items())}, sort_keys=True))
    except OSError as e:
        log.warning("could not write cache %s: %s", path, e)


def _need_scan(K: SimplicialComplex, R: MacRing, what: str):
    if K.m > R.scan_limit:
        raise Precondition(f"{what} needs a full Hochster scan; m = {K.m} exceeds {R.scan_limit}")


def _need_rigid(K: SimplicialComplex):
    for check, ok in (("closed 2-sphere", K.is_closed_2sphere()), ("flag", K.is_flag()),
                      ("no 4-belt", not K.has_four_belt())):
        if not ok:
            raise Precondition(f"precondition failed: {check}")


# -- commands --------------------------------------------------------------------

def cmd_info(args, field):
    K, meta, P = load_sphere_or_complex(args.file)
    sphere = K.is_closed_2sphere()
    rep = {
        "m": K.m,
        "f_vector": list(K.f_vector),
        "dim": K.dim,
        "flag": K.is_flag(),
        "four_belt": K.has_four_belt(),
        "closed_2sphere": sphere,
        "missing_faces": len(K.missing_faces),
        "euler_characteristic": K.euler_characteristic(),
        "rigid_class": rigidity.in_rigid_class(K),
    }
    if P is not None:
        rep["polytope"] = {"f_vector": list(P.f_vector), "facet_sizes": {str(k): v for k, v in P.facet_sizes().items()},
                           "fullerene": is_fullerene(P)}
    rep["verdict"] = "rigid-class" if rep["rigid_class"] else "outside-rigid-class"
    return rep, [meta]


def cmd_betti(args, field):
    K, meta, _ = load_sphere_or_complex(args.file)
    R = make_ring(K, field)
    _need_scan(K, R, "the total Betti vector")
    rep = betti_report(R)
    rep["field"] = field.name
    rep["verdict"] = "ok"
    save_ring(R)
    return rep, [meta]


def cmd_belts(args, field):
    K, meta, _ = load_sphere_or_complex(args.file)
    lengths = args.length or list(range(3, max([K.degree(v) for v in K.vertices] + [4]) + 1))
    out = []
    for n in lengths:
        for B in K.belts(n):
            out.append({"length": n, "cycle": list(B.cycle),
                        "missing_faces": len(K.full_subcomplex(B.mask).missing_faces),
                        "is_link": any(K.adjacency[u] == B.mask for u in K.vertices)})
    return {"lengths": lengths, "belts": out, "count": len(out), "verdict": "ok"}, [meta]


def cmd_gorenstein(args, field):
    K, meta, _ = load_sphere_or_complex(args.file)
    g = is_gorenstein_star(K, field)
    rep = {"field": field.name, "gorenstein_star": g}
    R = make_ring(K, field)
    if K.m <= R.scan_limit:
        rep["poincare_algebra"] = R.poincare_check()
        rep["agree"] = rep["poincare_algebra"] == g
        save_ring(R)
    rep["verdict"] = "gorenstein" if g else "not-gorenstein"
    return rep, [meta]


def parse_element(spec: str, K: SimplicialComplex, R: MacRing):
    kind, _, rest = spec.partition(":")
    try:
        vs = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    except ValueError:
        raise InputError(f"bad element spec {spec!r}")
    if kind == "top" and not rest:
        return R.fundamental_class(), {"kind": "top"}
    mask = mask_of(vs) if vs and all(1 <= v <= K.m for v in vs) else None
    if mask is None:
        raise InputError(f"bad element spec {spec!r}")
    if kind == "mf":
        if mask not in K.missing_faces:
            raise Precondition(f"{vs} is not a missing face")
        return R.missing_face_class(mask), {"kind": "missing_face", "vertices": sorted(vs)}
    if kind == "belt":
        if not K.full_subcomplex(mask).is_circle():
            raise Precondition(f"{vs} is not a belt")
        return R.summand_class(mask, 1), {"kind": "belt", "vertices": sorted(vs)}
    raise InputError(f"unknown element kind {kind!r} (use mf:, belt: or top)")


def cmd_invariants(args, field):
    K, meta, _ = load_sphere_or_complex(args.file)
    R = make_ring(K, field)
    try:
        elem, desc = parse_element(args.element, K, R)
    except ValueError as e:
        raise Precondition(str(e))
    rep = {"field": field.name, "element": desc, "degree": elem.degree}
    if K.m <= R.scan_limit:
        a = annihilator_dim(R, elem)
        rep["annihilator_dim"] = a.dim
        rep["ring_dim"] = a.ring_dim
    if field.is_finite:
        divs = [w for w in rigidity.missing_edge_supports(R)
                if any(w & I == w for I in elem.subsets()) and divides(R, R.summand_class(w, 0), elem)]
        rep["degree3_divisors"] = [list(vertices_of(w)) for w in divs]
    rep["verdict"] = "ok"
    save_ring(R)
    return rep, [meta]


def _rigidity_report(K: SimplicialComplex, field: Field):
    _need_rigid(K)
    if not field.is_finite:
        raise Precondition("rigidity checks need a finite field")
    R = make_ring(K, field)
    fp = rigidity.fingerprint(K, field, R)
    links = []
    for v in K.vertices:
        rec = rigidity.link_detection(R, K.link_belt(v))
        links.append({"vertex": v, "length": rec.belt.length, "count": rec.count, "expected": rec.expected,
                      "is_link": rec.is_link})
    div_ok = all(b.divisor_count == b.mf_count for b in fp.belts) and all(
        b.mf_count == b.length * (b.length - 3) // 2 for b in fp.belts)
    adj_ok = all(rigidity.adjacency_from_ring(R, a, b) == K.is_face(mask_of((a, b)))
                 for i, a in enumerate(K.vertices) for b in K.vertices[i + 1:])
    ring_4belt = four_belt_via_ring(R)
    save_ring(R)
    rep = {
        "field": field.name,
        "fingerprint": fp.to_dict(),
        "links": links,
        "belt_divisor_counts_ok": div_ok,
        "adjacency_ok": adj_ok,
        "four_belt_via_ring": ring_4belt,
        "lbt": {"f1": K.f_vector[1], "bound": lbt_bound(K.m, K.dim + 1)},
    }
    ok = div_ok and adj_ok and not ring_4belt and all(x["is_link"] for x in links)
    rep["verdict"] = "checks-pass" if ok else "checks-fail"
    return rep


def cmd_rigidity(args, field):
    K, meta, _ = load_sphere_or_complex(args.file)
    return _rigidity_report(K, field), [meta]


def cmd_reconstruct(args, field):
    K, meta, _ = load_sphere_or_complex(args.file)
    _need_rigid(K)
    if not field.is_finite:
        raise Precondition("reconstruction needs a finite field")
    R = make_ring(K, field)
    try:
        res = rigidity.reconstruct_details(R)
    except rigidity.PipelineError as e:
        raise Precondition(f"reconstruction failed: {e}")
    L = res.complex
    iso = canon.isomorphic(K, L)
    save_ring(R)
    return {
        "field": field.name,
        "m": L.m,
        "facets": L.facet_lists(),
        "vertex_belts": [list(vertices_of(b)) for b in res.belts],
        "candidate_belts": res.candidates,
        "isomorphic_to_input": iso,
        "verdict": "reconstructed" if iso else "mismatch",
    }, [meta]


def cmd_compare(args, field):
    K1, m1, _ = load_sphere_or_complex(args.file1)
    K2, m2, _ = load_sphere_or_complex(args.file2)
    v = rigidity.compare(K1, K2, field)
    rep = v.to_dict()
    rep["field"] = field.name
    return rep, [m1, m2]


def cmd_fullerene(args, field):
    obj, meta = load_object(args.file)
    if not isinstance(obj, SimplePolytope3):
        raise InputError("fullerene expects a polytope file")
    if not is_fullerene(obj):
        raise Precondition("precondition failed: facets are not all pentagons and hexagons")
    try:
        K = dualize_simple_polytope(obj)
    except ComplexError as e:
        raise InputError(str(e))
    flag, four = K.is_flag(), K.has_four_belt()
    rep = {"polytope_f_vector": list(obj.f_vector), "dual_m": K.m, "dual_f_vector": list(K.f_vector),
           "flag": flag, "four_belt": four, "field": field.name}
    ico = corpus.load_sphere("icosahedron")
    rep["dual_is_icosahedron"] = canon.isomorphic(K, ico)
    rigid = flag and not four and K.is_closed_2sphere()
    rep["B_rigid_class"] = rigid
    if rigid and field.is_finite:
        fp = rigidity.fingerprint(K, field)
        rep["fingerprint"] = fp.to_dict()
    rep["verdict"] = "B-rigid-class" if rigid else "not-rigid-class"
    return rep, [meta]


COMMANDS = {
    "info": cmd_info, "betti": cmd_betti, "belts": cmd_belts, "gorenstein": cmd_gorenstein,
    "invariants": cmd_invariants, "rigidity": cmd_rigidity, "reconstruct": cmd_reconstruct,
    "compare": cmd_compare, "fullerene": cmd_fullerene,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", default="f2", help="f2, f3, q or fp:P (default f2)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="parallelism bound (computations run sequentially)")
    common.add_argument("-v", "--verbose", action="store_true")
    p = _Parser(prog="macbelt", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in ("info", "betti", "gorenstein", "rigidity", "reconstruct", "fullerene"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
    s = sub.add_parser("belts", parents=[common])
    s.add_argument("file")
    s.add_argument("--length", type=int, action="append")
    s = sub.add_parser("invariants", parents=[common])
    s.add_argument("file")
    s.add_argument("--element", required=True, help="mf:1,3 | belt:2,3,5,6 | top")
    s = sub.add_parser("compare", parents=[common])
    s.add_argument("file1")
    s.add_argument("file2")
    return p


def _human(rep: dict) -> str:
    lines = []
    for k in sorted(rep):
        v = rep[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
            if len(v) > 200:
                v = v[:197] + "..."
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise InputError("missing command")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                            format="%(name)s: %(message)s")
        try:
            field = Field.parse(args.field)
        except ValueError as e:
            raise InputError(f"bad --field: {e}")
        if args.threads < 1:
            raise InputError("--threads must be positive")
        t0 = time.perf_counter()
        rep, inputs = COMMANDS[args.command](args, field)
        print(f"macbelt {args.command}: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (Precondition, ComplexError, UnsupportedField, rigidity.PipelineError) as e:
        print(f"precondition: {e}", file=sys.stderr)
        return 1
    rep = dict(rep)
    rep["command"] = args.command
    rep["inputs"] = inputs
    if args.json:
        out.write(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    else:
        out.write(_human(rep) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
