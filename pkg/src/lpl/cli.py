"""Model/problem file parsing and the ``lpl`` command line tool.

Models and problems are JSON; all rationals travel as strings ``p`` or
``p/q`` so no decimal rounding can occur.  Reports are deterministic: JSON
output is key-sorted and byte-stable for a fixed seed.

Exit codes: 0 success, 1 input error, 2 mathematical refusal (for example a
non-constant rank where the extension construction needs a constant one).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import algebroid as algebroid_mod
from . import embedding as embedding_mod
from .lie import LieAlgebra, NotASubalgebra, validate_jacobi
from .lie_poisson import casimir_check, parse_polynomial, poisson_bracket_poly
from .linalg import DimensionMismatch, Subspace, Vector, is_zero_vector, vec
from .submanifold import AffineSubspace, SampleSpec, classify

FIXTURES_DIR = Path(__file__).parent / "fixtures"

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_REFUSED = 2


class InputError(ValueError):
    """Malformed model or problem input."""


_RATIONAL = re.compile(r"^[+-]?\d+(?:/(\d+))?$")


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not (m := _RATIONAL.match(text.strip())):
        raise InputError(f"bad rational {text!r} (expected 'p' or 'p/q')")
    if m.group(1) is not None and int(m.group(1)) == 0:
        raise InputError(f"bad rational {text!r}: zero denominator")
    return Fraction(text.strip())


def frac_str(x: Fraction) -> str:
    return str(x)


def vector_strs(v) -> list[str]:
    return [frac_str(Fraction(e)) for e in v]


def subspace_dict(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": [vector_strs(row) for row in s.basis]}


def parse_model(data) -> LieAlgebra:
    """Validated Lie algebra from a ModelFile (dict, JSON text, or bytes)."""
    if isinstance(data, (bytes, str)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed model JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("model must be a JSON object")
    try:
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("model needs an integer 'dim'") from exc
    if dim <= 0:
        raise InputError("model dimension must be positive")
    labels = data.get("basis") or [f"e{i + 1}" for i in range(dim)]
    if len(labels) != dim or not all(isinstance(x, str) for x in labels):
        raise InputError("'basis' must list one label per dimension")
    brackets: dict[tuple[int, int], Vector] = {}
    for entry in data.get("brackets", []):
        try:
            i, j = int(entry["i"]), int(entry["j"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("each bracket needs integer 'i' and 'j'") from exc
        if not 0 <= i < j < dim:
            raise InputError(f"bracket indices ({i}, {j}) must satisfy 0 <= i < j < dim")
        coords = [Fraction(0)] * dim
        for term in entry.get("terms", []):
            try:
                k = int(term["k"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError("each term needs an integer 'k'") from exc
            if not 0 <= k < dim:
                raise InputError(f"term index {k} out of range")
            coords[k] += parse_rational(term["coefficient"])
        brackets[(i, j)] = tuple(coords)
    algebra = LieAlgebra.from_brackets(dim, brackets, labels)
    report = validate_jacobi(algebra)
    if not report.ok:
        raise InputError(
            f"Jacobi identity fails on basis triple {report.triple}, "
            f"residual {vector_strs(report.residual)}"
        )
    return algebra


def serialize_model(algebra: LieAlgebra, name: str = "model") -> dict:
    brackets = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            w = algebra.table[i][j]
            if is_zero_vector(w):
                continue
            terms = [
                {"k": k, "coefficient": frac_str(c)} for k, c in enumerate(w) if c != 0
            ]
            brackets.append({"i": i, "j": j, "terms": terms})
    return {
        "name": name,
        "dim": algebra.dim,
        "basis": list(algebra.labels),
        "brackets": brackets,
    }


@dataclass
class Problem:
    algebra: LieAlgebra
    h: Subspace
    base: Vector
    r: Optional[Subspace]
    sampling: SampleSpec

    @property
    def affine(self) -> AffineSubspace:
        return AffineSubspace(self.algebra, self.h, self.base)


def _resolve_model(ref, base_dir: Optional[Path]) -> LieAlgebra:
    if isinstance(ref, dict):
        return parse_model(ref)
    if isinstance(ref, str):
        candidates = []
        if base_dir is not None:
            candidates.append(base_dir / ref)
        candidates.append(Path(ref))
        candidates.append(FIXTURES_DIR / ref)
        for path in candidates:
            if path.is_file():
                return parse_model(path.read_text())
        raise InputError(f"model file {ref!r} not found")
    raise InputError("'model' must be a path or an inline model object")


def _parse_vector(raw, dim: int, what: str) -> Vector:
    if not isinstance(raw, list) or len(raw) != dim:
        raise InputError(f"{what} must be a list of {dim} rationals")
    return tuple(parse_rational(x) for x in raw)


def parse_problem(
    data,
    base_dir: Optional[Path] = None,
    model_override: Optional[LieAlgebra] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Problem:
    if isinstance(data, (bytes, str)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed problem JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("problem must be a JSON object")
    if model_override is not None:
        algebra = model_override
    else:
        if "model" not in data:
            raise InputError("problem needs a 'model' (path or inline)")
        algebra = _resolve_model(data["model"], base_dir)
    n = algebra.dim
    raw_h = data.get("h_basis")
    if not isinstance(raw_h, list):
        raise InputError("problem needs an 'h_basis' list of vectors")
    try:
        h = Subspace.span(n, [_parse_vector(v, n, "h_basis vector") for v in raw_h])
    except DimensionMismatch as exc:
        raise InputError(str(exc)) from exc
    base = _parse_vector(data.get("lambda", ["0"] * n), n, "'lambda'")
    r = None
    if data.get("R_basis") is not None:
        r = Subspace.span(
            n, [_parse_vector(v, n, "R_basis vector") for v in data["R_basis"]]
        )
    count = samples if samples is not None else int(data.get("samples", 64))
    the_seed = seed if seed is not None else int(data.get("seed", 0))
    return Problem(algebra, h, base, r, SampleSpec(count=count, seed=the_seed))


# -- report builders --------------------------------------------------------


def _point_dict(x) -> list[str]:
    return vector_strs(x)


def _provenance(kind: str, sampling: SampleSpec) -> str:
    if kind == "certified_constant" or kind == "certified":
        return "certified"
    return f"sampled({sampling.count}, seed={sampling.seed})"


def _coisotropy_dict(result) -> dict:
    out = {"verdict": result.coisotropic, "provenance": "certified"}
    if result.witness is not None:
        kind = result.witness[0]
        if kind == "bracket_escapes":
            _, u, v, w = result.witness
            out["witness"] = {
                "kind": kind,
                "u": vector_strs(u),
                "v": vector_strs(v),
                "bracket": vector_strs(w),
            }
        else:
            out["witness"] = {"kind": kind, "vector": vector_strs(result.witness[1])}
    return out


def _pre_poisson_dict(verdict, sampling: SampleSpec) -> dict:
    out = {"verdict": verdict.kind, "provenance": _provenance(verdict.kind, sampling)}
    if verdict.rank is not None:
        out["rank"] = verdict.rank
    if verdict.space is not None:
        out["constant_space"] = subspace_dict(verdict.space)
    if verdict.counterexample is not None:
        (x1, r1), (x2, r2) = verdict.counterexample
        out["counterexample"] = [
            {"point": _point_dict(x1), "rank": r1},
            {"point": _point_dict(x2), "rank": r2},
        ]
    return out


def report_validate(algebra: LieAlgebra) -> dict:
    report = validate_jacobi(algebra)
    out = {"command": "validate", "jacobi_ok": report.ok, "dim": algebra.dim}
    if not report.ok:
        out["triple"] = list(report.triple)
        out["residual"] = vector_strs(report.residual)
    return out


def report_classify(problem: Problem) -> dict:
    c = problem.affine
    rep = classify(c, problem.sampling)
    return {
        "command": "classify",
        "affine_dim": c.dim,
        "direction": subspace_dict(c.direction),
        "coisotropic": _coisotropy_dict(rep.coisotropic),
        "pre_poisson": _pre_poisson_dict(rep.pre_poisson, problem.sampling),
        "generic_rank": rep.generic_rank,
        "characteristic_rank_at_base": rep.characteristic_rank_at_base,
        "poisson_dirac_at_base": rep.poisson_dirac_at_base,
        "cosymplectic_at_base": rep.cosymplectic_at_base,
    }


def _extension_dict(ext, locus, constancy, sampling: SampleSpec) -> dict:
    out = {
        "R": subspace_dict(ext.r),
        "P_tilde_direction": subspace_dict(ext.p_tilde.direction),
        "p": subspace_dict(ext.p),
        "evidence": ext.evidence,
        "cosymplectic_locus": {
            "never_cosymplectic": locus.never_cosymplectic,
            "cosymplectic_at_base": locus.cosymplectic_at_base,
            "failing_points": [_point_dict(x) for x in locus.failing_points],
            "checked": len(locus.checked),
            "provenance": _provenance("sampled", sampling),
        },
        "constant_sharp_conormal": {"verdict": constancy.kind},
    }
    if constancy.certified:
        out["constant_sharp_conormal"]["k_ann"] = subspace_dict(constancy.k_ann)
        out["constant_sharp_conormal"]["provenance"] = "certified"
    else:
        v, u, image = constancy.witness
        out["constant_sharp_conormal"]["witness"] = {
            "p_vector": vector_strs(v),
            "direction": vector_strs(u),
            "image": vector_strs(image),
        }
    return out


def _build_extension(problem: Problem):
    ext = embedding_mod.extend(problem.affine, problem.r, problem.sampling)
    locus = embedding_mod.cosymplectic_locus(ext, problem.sampling)
    constancy = embedding_mod.constant_sharp_conormal(ext)
    return ext, locus, constancy


def report_extend(problem: Problem) -> dict:
    ext, locus, constancy = _build_extension(problem)
    out = _extension_dict(ext, locus, constancy, problem.sampling)
    out["command"] = "extend"
    return out


def report_pair(problem: Problem) -> dict:
    ext, locus, constancy = _build_extension(problem)
    if not constancy.certified:
        raise embedding_mod.ConstancyNotCertified(
            "sharp N*P is not constant; the symmetric-pair analysis is undefined"
        )
    pair = embedding_mod.symmetric_pair_analysis(ext, constancy)
    out = _extension_dict(ext, locus, constancy, problem.sampling)
    out["command"] = "pair"
    out["k"] = subspace_dict(pair.k)
    out["symmetric_pair"] = {
        "decomposition": pair.decomposition,
        "k_subalgebra": pair.k_subalgebra,
        "kp_in_p": pair.kp_in_p,
        "pp_in_k": pair.pp_in_k,
        "symmetric_pair": pair.symmetric_pair,
    }
    if pair.k_subalgebra and pair.decomposition:
        induced = embedding_mod.induced_structure(ext, constancy)
        out["induced_structure"] = serialize_model(induced, name="induced")
    else:
        out["induced_structure"] = None
    return out


def report_algebroid(problem: Problem) -> dict:
    rep = algebroid_mod.transversal_orbit_report(problem.affine, problem.sampling)
    return {
        "command": "algebroid",
        "d": subspace_dict(rep.d) if rep.d is not None else None,
        "d_is_subalgebra": rep.d_is_subalgebra,
        "orbit_dims": [
            {"point": _point_dict(x), "dim": d} for x, d in rep.orbit_dims
        ],
        "transversal_everywhere": all(ok for _, ok in rep.transversal),
        "constant_orbit_dim": rep.constant_orbit_dim,
        "provenance": _provenance("sampled", problem.sampling),
    }


def report_bracket(algebra: LieAlgebra, f_text: str, g_text: str) -> dict:
    try:
        f = parse_polynomial(f_text, algebra.dim)
        g = parse_polynomial(g_text, algebra.dim)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {
        "command": "bracket",
        "f": str(f),
        "g": str(g),
        "bracket": str(poisson_bracket_poly(algebra, f, g)),
    }


def report_casimir(algebra: LieAlgebra, f_text: str) -> dict:
    try:
        f = parse_polynomial(f_text, algebra.dim)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"command": "casimir", "f": str(f), "casimir": casimir_check(algebra, f)}


# -- rendering and dispatch -------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_human(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_human(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(render_human(item, indent + 1).rstrip())
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(line for line in lines if line) + ("\n" if indent == 0 else "")


def run(command: str, problem: Problem, poly_args: tuple[str, ...] = ()) -> dict:
    """Dispatch one command on a parsed problem; returns the report dict."""
    if command == "validate":
        return report_validate(problem.algebra)
    if command == "classify":
        return report_classify(problem)
    if command == "extend":
        return report_extend(problem)
    if command == "pair":
        return report_pair(problem)
    if command == "algebroid":
        return report_algebroid(problem)
    if command == "bracket":
        if len(poly_args) != 2:
            raise InputError("bracket needs exactly two polynomial arguments")
        return report_bracket(problem.algebra, *poly_args)
    if command == "casimir":
        if len(poly_args) != 1:
            raise InputError("casimir needs exactly one polynomial argument")
        return report_casimir(problem.algebra, poly_args[0])
    raise InputError(f"unknown command {command!r}")


COMMANDS = ("validate", "classify", "extend", "pair", "algebroid", "bracket", "casimir")
_NEEDS_PROBLEM = {"classify", "extend", "pair", "algebroid"}


def _load_problem(args) -> Problem:
    model_override = None
    if args.model:
        path = Path(args.model)
        if not path.is_file() and (FIXTURES_DIR / args.model).is_file():
            path = FIXTURES_DIR / args.model
        if not path.is_file():
            raise InputError(f"model file {args.model!r} not found")
        model_override = parse_model(path.read_text())
    if args.problem:
        path = Path(args.problem)
        if not path.is_file() and (FIXTURES_DIR / args.problem).is_file():
            path = FIXTURES_DIR / args.problem
        if not path.is_file():
            raise InputError(f"problem file {args.problem!r} not found")
        return parse_problem(
            path.read_text(),
            base_dir=path.parent,
            model_override=model_override,
            samples=args.samples,
            seed=args.seed,
        )
    if model_override is None:
        raise InputError("either --problem or --model is required")
    if args.command in _NEEDS_PROBLEM:
        raise InputError(f"command {args.command!r} needs --problem")
    n = model_override.dim
    return Problem(
        model_override,
        Subspace.zero(n),
        tuple(Fraction(0) for _ in range(n)),
        None,
        SampleSpec(count=args.samples or 64, seed=args.seed or 0),
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lpl",
        description="Exact classification of affine subspaces of Lie-Poisson duals",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("polys", nargs="*", help="polynomial arguments (bracket, casimir)")
    parser.add_argument("--problem", help="problem JSON file")
    parser.add_argument("--model", help="model JSON file (overrides the problem's)")
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--json", action="store_true", dest="as_json")
    args = parser.parse_intermixed_args(argv)
    try:
        problem = _load_problem(args)
        report = run(args.command, problem, tuple(args.polys))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (
        embedding_mod.RankNotConstant,
        embedding_mod.ConstancyNotCertified,
        embedding_mod.NotComplementary,
        NotASubalgebra,
    ) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    sys.stdout.write(render_json(report) if args.as_json else render_human(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
