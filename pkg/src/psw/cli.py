"""Command-line surface: invariants, classification, realizability, corpus.

Every subcommand emits deterministic JSON (fixed key order, fixed basis
order, compact separators) so repeated runs are byte-identical; the text
format is rendered line by line from the same JSON document.  Exit codes are
a fixed contract: 0 ok, 1 corpus mismatch, 2 input error, 3 hypothesis
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources

from .char_classes import (IntersectionForm, SWClasses, WuClasses,
                           intersection_form, mod2_pairing, stiefel_whitney,
                           w2_criterion, wu_classes)
from .classifier import (MapClassification, classify_3manifold_fiber,
                         classify_codim1, realizable_surface_class,
                         realizable_surface_class_4mfd)
from .complex_model import (ManifoldReport, SimplicialComplex,
                            boundary_of_simplex, load_complex, parse_complex,
                            staircase_product, verify_closed_manifold)
from .errors import HypothesisViolation, InputError
from .homology_engine import (homology_class, integral_homology,
                              mod2_homology, rho2_on_homology)

__all__ = ["EXIT_CORPUS_MISMATCH", "EXIT_HYPOTHESIS", "EXIT_INPUT", "EXIT_OK",
           "InvariantBundle", "compute_bundle", "corpus_entries", "main",
           "parse_class_spec"]

EXIT_OK = 0
EXIT_CORPUS_MISMATCH = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3

# Bundled corpus, in the order the corpus runner reports them.
CORPUS_NAMES = (
    "s1", "s3", "s4", "s5",
    "t2", "t3", "t4", "t5",
    "s1xs2", "s1xs3", "s2xs2", "cp2xs1",
    "rp2", "rp3", "rp4", "cp2",
)


@dataclass(frozen=True, eq=False)
class InvariantBundle:
    """Everything cmd_invariants prints for one closed complex.

    ``pairing_ranks`` records the verified rank of the mod-2 cup pairing in
    each degree (always the full mod-2 Betti number; computing it enforces
    the nondegeneracy assertion).  The JSON document exposes the schema keys
    only, in fixed order.
    """

    report: ManifoldReport
    betti_z: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    betti_z2: tuple[int, ...]
    rho2_image_dims: tuple[int, ...]
    pairing_ranks: tuple[int, ...]
    wu: WuClasses
    sw: SWClasses
    w2_bit: int
    form: IntersectionForm | None
    classification: MapClassification | None

    def to_json_dict(self) -> dict:
        doc = {
            "name": self.report.name,
            "dimension": self.report.dim,
            "orientable": self.report.is_orientable,
            "connected": self.report.is_connected,
            "betti_z": list(self.betti_z),
            "torsion": [list(t) for t in self.torsion],
            "betti_z2": list(self.betti_z2),
            "rho2_image_dims": list(self.rho2_image_dims),
            "wu": self.wu.coordinate_table(),
            "sw": self.sw.coordinate_table(),
            "w2_criterion": self.w2_bit,
            "intersection_form": ([list(row) for row in self.form.matrix]
                                  if self.form is not None else None),
            "classification": (_classification_dict(self.classification)
                               if self.classification is not None else None),
        }
        return doc


def _classification_dict(mc: MapClassification) -> dict:
    return {
        "target_sphere_dim": mc.target_sphere_dim,
        "degree_group": {"rank": mc.degree_group.rank,
                         "torsion": list(mc.degree_group.torsion)},
        "fiber_size": mc.fiber_size,
        "criterion_bit": mc.criterion_bit,
        "total": mc.total_count,
    }


def compute_bundle(K: SimplicialComplex) -> InvariantBundle:
    """Run the full invariant pipeline on one closed complex."""
    report = verify_closed_manifold(K)
    if not report.is_closed:
        raise InputError("input is not a closed pseudomanifold: "
                         + (report.detail or "connectivity check failed"))
    m = K.dim
    groups = [integral_homology(K, k) for k in range(m + 1)]
    bundle = InvariantBundle(
        report=report,
        betti_z=tuple(g.rank for g in groups),
        torsion=tuple(tuple(g.torsion) for g in groups),
        betti_z2=tuple(mod2_homology(K, k).dimension for k in range(m + 1)),
        rho2_image_dims=tuple(rho2_on_homology(K, k).image_dimension
                              for k in range(m + 1)),
        pairing_ranks=tuple(mod2_pairing(K, k).matrix.rank
                            for k in range(m + 1)),
        wu=wu_classes(K),
        sw=stiefel_whitney(K),
        w2_bit=w2_criterion(K) if m >= 2 else 0,
        form=(intersection_form(K)
              if m == 4 and report.is_orientable else None),
        classification=(classify_codim1(K)
                        if m >= 4 and report.is_orientable else None),
    )
    return bundle


def parse_class_spec(spec: str) -> tuple[list[int], list[int]]:
    """Parse "c1,c2,...;t1,..." into free coordinates and torsion residues."""
    parts = spec.split(";")
    if len(parts) > 2:
        raise InputError(f"class spec has {len(parts) - 1} ';' separators, "
                         "expected at most one")
    free_part = parts[0]
    torsion_part = parts[1] if len(parts) == 2 else ""

    def ints(tokens: str, which: str) -> list[int]:
        out = []
        for tok in tokens.split(","):
            tok = tok.strip()
            if not tok:
                continue
            try:
                out.append(int(tok))
            except ValueError:
                raise InputError(f"bad {which} coordinate {tok!r} in class "
                                 f"spec {spec!r}") from None
        return out

    return ints(free_part, "free"), ints(torsion_part, "torsion")


def _dump(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"))


def _render_text(doc: dict) -> str:
    lines = [f"{key}: {json.dumps(value, separators=(',', ':'))}"
             for key, value in doc.items()]
    return "\n".join(lines)


def _print_doc(doc: dict, fmt: str) -> None:
    print(_dump(doc) if fmt == "json" else _render_text(doc))


def _class_echo(free: list[int], torsion: list[int]) -> dict:
    return {"free": free, "torsion": torsion}


# -- subcommands ----------------------------------------------------------------

def cmd_invariants(args: argparse.Namespace) -> int:
    K = load_complex(args.file)
    bundle = compute_bundle(K)
    _print_doc(bundle.to_json_dict(), args.format)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    K = load_complex(args.file)
    if K.dim == 3:
        if args.cls is None:
            h1 = integral_homology(K, 1)
            verify = verify_closed_manifold(K)
            if not (verify.is_closed and verify.is_orientable):
                # route through the classifier for the named hypothesis error
                classify_3manifold_fiber(K, homology_class(K, 1, (0,) * h1.rank))
            doc = {
                "degree_group": {"rank": h1.rank, "torsion": list(h1.torsion)},
                "fiber_formula": "Z_{2d}",
                "note": "d = gcd of the free coordinates of the class; "
                        "d = 0 gives Z",
            }
            _print_doc(doc, "json")
            return EXIT_OK
        free, torsion = parse_class_spec(args.cls)
        alpha = homology_class(K, 1, free, torsion)
        fd = classify_3manifold_fiber(K, alpha)
        doc = {"d": fd.d, "fiber": fd.fiber,
               "class": _class_echo(free, torsion)}
        _print_doc(doc, "json")
        return EXIT_OK
    mc = classify_codim1(K)
    doc = _classification_dict(mc)
    if args.cls is not None:
        # the fiber over every degree class has the same size; validate and echo
        free, torsion = parse_class_spec(args.cls)
        homology_class(K, 1, free, torsion)
        doc["class"] = _class_echo(free, torsion)
    _print_doc(doc, "json")
    return EXIT_OK


def cmd_realizable(args: argparse.Namespace) -> int:
    K = load_complex(args.file)
    free, torsion = parse_class_spec(args.cls)
    alpha = homology_class(K, 2, free, torsion)
    if K.dim == 4:
        verdict = realizable_surface_class_4mfd(K, alpha)
    else:
        verdict = realizable_surface_class(K, alpha)
    doc = {
        "realizable": verdict.realizable,
        "witness_value": verdict.witness_value,
        "theorem_tag": verdict.theorem_tag,
        "class": _class_echo(free, torsion),
    }
    _print_doc(doc, "json")
    return EXIT_OK


def corpus_entries():
    """(name, corpus traversable, golden traversable) for each bundled entry."""
    root = resources.files("psw").joinpath("corpus")
    out = []
    for name in CORPUS_NAMES:
        out.append((name, root.joinpath(f"{name}.json"),
                    root.joinpath("golden", f"{name}.json")))
    return out


def _bundle_json_line(K: SimplicialComplex) -> str:
    return _dump(compute_bundle(K).to_json_dict()) + "\n"


def _first_difference(got: dict, want: dict) -> str:
    for key in want:
        if key not in got:
            return f"missing key {key}"
        if got[key] != want[key]:
            return (f"{key}: got {json.dumps(got[key], separators=(',', ':'))}, "
                    f"want {json.dumps(want[key], separators=(',', ':'))}")
    for key in got:
        if key not in want:
            return f"unexpected key {key}"
    return "documents differ only in byte layout"


def cmd_corpus(args: argparse.Namespace) -> int:
    entries = corpus_entries()
    if not args.check:
        for name, corpus_file, _ in entries:
            K = parse_complex(corpus_file.read_text(), default_name=name)
            print(f"{name}: dimension {K.dim}, {len(K.facets)} facets")
        return EXIT_OK
    failures = 0
    for name, corpus_file, golden_file in entries:
        try:
            text = corpus_file.read_text()
        except (FileNotFoundError, OSError) as exc:
            raise InputError(f"corpus file {name}.json is missing: {exc}") \
                from exc
        try:
            golden = golden_file.read_text()
        except (FileNotFoundError, OSError) as exc:
            raise InputError(f"golden file for {name} is missing: {exc}") \
                from exc
        K = parse_complex(text, default_name=name)
        got = _bundle_json_line(K)
        if got == golden:
            print(f"{name}: pass")
        else:
            failures += 1
            diff = _first_difference(json.loads(got), json.loads(golden))
            print(f"{name}: FAIL ({diff})")
    if failures:
        print(f"{failures} of {len(entries)} corpus entries failed")
        return EXIT_CORPUS_MISMATCH
    print(f"all {len(entries)} corpus entries pass")
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    if args.kind == "sphere":
        try:
            k = int(args.args[0])
        except (IndexError, ValueError):
            raise InputError("build sphere needs one integer dimension") \
                from None
        if len(args.args) != 1:
            raise InputError("build sphere takes exactly one argument")
        K = boundary_of_simplex(k, name=f"s{k}")
    else:
        if len(args.args) != 2:
            raise InputError("build product needs exactly two input files")
        a = load_complex(args.args[0])
        b = load_complex(args.args[1])
        K = staircase_product(a, b)
    text = K.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# -- parser wiring --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psw",
        description="Invariants, sphere-map classification, and framed-class "
                    "realizability for triangulated closed manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants",
                       help="full invariant bundle of one complex")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify",
                       help="fiber structure of the degree map to the "
                            "codimension-1 sphere")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", default=None, metavar="SPEC",
                   help='class coordinates "c1,c2,...;t1,..." in the printed '
                        "generator basis")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("realizable",
                       help="is a degree-2 class the class of a framed "
                            "surface")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", required=True, metavar="SPEC",
                   help='class coordinates "c1,c2,...;t1,..." (dimension-4 '
                        "free coordinates refer to the intersection-form "
                        "basis)")
    p.set_defaults(func=cmd_realizable)

    p = sub.add_parser("corpus",
                       help="list bundled manifolds or check them against "
                            "golden invariants")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("build", help="write a triangulation as JSON")
    p.add_argument("kind", choices=("sphere", "product"))
    p.add_argument("args", nargs="*")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_build)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HypothesisViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
