"""Batch front end: ``zpdlab <command> [--seed N] [--budget N] [--out PATH] SPEC...``.

Every run writes one JSON report. The ``report`` section is a pure function of
the inputs and the seed; wall-clock data lives under ``timing``.

Exit status: 0 when every check met expectations, 1 when a check was refuted
(or errored, or missed an explicit expectation), 2 on unreadable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .algebra import BilinearMap
from .certificate import Certificate, encode
from .derivations import (
    CONDITION_TAGS, ConditionTag, central_d1_space, check_condition_M, condition_space,
    definition_space, verify_lemma_f, verify_theorem_d1, verify_theorem_d2, verify_theorem_dd2,
)
from .errors import ZpdError
from .idempotents import check_full_idempotent_span
from .linalg import vlincomb
from .specfile import SpecDocument, load_spec
from .zero_products import PairMode, random_scalar
from .zpd import Product, check_prop_n, check_zpd, solve_bilinear_space, verify_ds_identities

THEOREMS = ("d1", "d2", "dd2", "ds", "prop-n", "lemma-f")
COMMANDS = ("check-zpd", "check-zjpd", "check-im-span", "check-condition-m", "solve", "verify")


@dataclass
class CheckRequest:
    check: str                  # one of COMMANDS
    spec: str                   # path or inline spec text
    params: dict = field(default_factory=dict)
    expect: str | None = None   # expected outcome; None means "not refuted"
    label: str | None = None    # how the spec is named in the report (defaults to ``spec``)


@dataclass
class RunConfig:
    command: str
    checks: list = field(default_factory=list)
    seed: int = 0
    budget: int | None = None
    out: str | None = None


@dataclass
class Report:
    body: dict
    timing: dict
    exit_code: int

    def to_json(self) -> dict:
        return {"report": self.body, "timing": self.timing}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def body_text(self) -> str:
        return json.dumps(self.body, indent=2, sort_keys=True)


# -- individual checks -----------------------------------------------------------

def _random_member(space, rng: random.Random):
    coeffs = [random_scalar(rng) for _ in space.basis]
    return vlincomb(coeffs, space.basis, space.ambient_dim)


def _run_verify(doc: SpecDocument, params: dict, seed: int, budget) -> Certificate:
    theorem = params.get("theorem")
    A = doc.algebra
    if theorem == "d1":
        return verify_theorem_d1(A, doc.require_bimodule(), doc.require_ideal(), seed, budget, doc.family)
    if theorem == "d2":
        return verify_theorem_d2(A, doc.require_bimodule(), doc.require_ideal(), seed, budget, doc.family)
    if theorem == "dd2":
        return verify_theorem_dd2(A, doc.require_bimodule(), doc.require_ideal(), seed, budget, doc.family)
    if theorem == "ds":
        t = int(params.get("target_dim", 1))
        space = solve_bilinear_space(A, t, PairMode.TWO_SIDED, seed, budget, family=doc.family)
        phi = BilinearMap.from_vector(_random_member(space, random.Random(seed)), A.dim, t)
        return verify_ds_identities(A, phi, doc.family, int(params.get("samples", 100)), seed, budget)
    if theorem == "prop-n":
        return check_prop_n(A, int(params.get("target_dim", 1)), seed, budget, doc.family)
    if theorem == "lemma-f":
        return verify_lemma_f(doc.require_bimodule(), int(params.get("samples", 1000)), seed)
    raise ZpdError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def _run_solve(doc: SpecDocument, params: dict, seed: int, budget) -> dict:
    tag = ConditionTag(params.get("tag"))
    A, M = doc.algebra, doc.require_bimodule()
    if tag in CONDITION_TAGS:
        space = condition_space(A, M, tag, seed, budget, doc.family)
    elif tag is ConditionTag.CENTRAL_D1:
        space = central_d1_space(A, M)
    else:
        space = definition_space(A, M, tag)
    return {
        "outcome": "computed",
        "seed": seed if tag in CONDITION_TAGS else None,
        "details": {"tag": tag.value, "dim": space.dim, "ambient_dim": space.space.ambient_dim,
                    "sampled": tag in CONDITION_TAGS},
        "witness": {"basis": encode(space.space.basis)},
        "generators_used": 0,
    }


def run_check(req: CheckRequest, seed: int, budget) -> dict:
    doc = load_spec(req.spec)
    result = _dispatch(req.check, req.params, doc, seed, budget)
    result["budget"] = 50 * doc.algebra.dim if budget is None else budget
    return result


def _dispatch(check: str, params: dict, doc: SpecDocument, seed: int, budget) -> dict:
    if check in ("check-zpd", "check-zjpd"):
        mode = Product.ORDINARY if check == "check-zpd" else Product.JORDAN
        cert = check_zpd(doc.algebra, mode, seed, budget, doc.family)
    elif check == "check-im-span":
        cert = check_full_idempotent_span(doc.algebra, doc.family_or_standard())
    elif check == "check-condition-m":
        cert = check_condition_M(doc.algebra, doc.require_bimodule(), doc.require_ideal(), doc.family)
    elif check == "solve":
        return _run_solve(doc, params, seed, budget)
    elif check == "verify":
        cert = _run_verify(doc, params, seed, budget)
    else:
        raise ZpdError(f"unknown check {check!r}")
    return cert.to_json()


# -- runs ---------------------------------------------------------------------------

def _resolve_text(spec: str) -> str:
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return fh.read()
    return spec


def input_digest(config: RunConfig) -> str:
    payload = {
        "seed": config.seed,
        "budget": config.budget,
        "checks": [[c.check, _resolve_text(c.spec), c.params, c.expect] for c in config.checks],
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _spec_label(spec: str) -> str:
    return " ".join(spec.split()) if len(spec) < 80 else spec[:77] + "..."


def run(config: RunConfig) -> Report:
    """Execute every requested check, in order, and assemble the report."""
    records, walls = [], []
    failed = False
    for req in config.checks:
        start = time.perf_counter()
        record = {"check": req.check, "spec": _spec_label(req.label or req.spec),
                  "parameters": dict(req.params), "budget": config.budget}
        try:
            record.update(run_check(req, config.seed, config.budget))
        except ZpdError as exc:
            record.update({"outcome": "error", "error": f"{type(exc).__name__}: {exc}",
                           "witness": encode(getattr(exc, "witness", None))})
        except ValueError as exc:
            record.update({"outcome": "error", "error": f"{type(exc).__name__}: {exc}"})
        walls.append(round(time.perf_counter() - start, 6))
        if req.expect is not None:
            record["expected"] = req.expect
            ok = record["outcome"] == req.expect
        else:
            ok = record["outcome"] not in ("refuted", "error")
        record["as_expected"] = ok
        failed = failed or not ok
        records.append(record)
    body = {
        "tool": "zpdlab",
        "version": __version__,
        "command": config.command,
        "seed": config.seed,
        "budget": config.budget,
        "input_digest": input_digest(config),
        "records": records,
    }
    timing = {
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "wall_time_s": walls,
    }
    return Report(body, timing, 1 if failed else 0)


# -- built-in suite -----------------------------------------------------------------

def suite_checks(lemma_samples: int = 1000, ds_samples: int = 500) -> list:
    """The acceptance suite as a list of check requests."""
    reg = "bimodule = regular; ideal = full"
    checks = []
    for alg in ("matrix(2)", "matrix(3)", "triangular(2)", "triangular(3)", "block([2,1])"):
        spec = f"algebra = {alg}"
        checks.append(CheckRequest("check-im-span", spec, expect="certified"))
        checks.append(CheckRequest("check-zpd", spec, expect="certified"))
        checks.append(CheckRequest("check-zjpd", spec, expect="certified"))
    checks += [
        CheckRequest("check-condition-m", f"algebra = matrix(2); {reg}", expect="certified"),
        CheckRequest("check-condition-m", "algebra = remark; ideal = full", expect="certified"),
        CheckRequest("check-condition-m",
                     'algebra = triangular(2)\nbimodule = regular\nideal = [{"E12": 1}]',
                     expect="refuted"),
    ]
    for alg in ("matrix(2)", "matrix(3)", "triangular(2)"):
        checks.append(CheckRequest("verify", f"algebra = {alg}; {reg}", {"theorem": "d1"}, "certified"))
    members = [f"algebra = matrix(2); {reg}", "algebra = remark; ideal = full",
               "algebra = block([2,1]); bimodule = ambient; ideal = full"]
    for spec in members:
        checks.append(CheckRequest("verify", spec, {"theorem": "d2"}, "certified"))
    for spec in members + [f"algebra = triangular(3); {reg}"]:
        checks.append(CheckRequest("verify", spec, {"theorem": "dd2"}, "certified"))
    checks += [
        CheckRequest("verify", "algebra = matrix(2)", {"theorem": "ds", "target_dim": 2,
                                                       "samples": ds_samples}, "certified"),
        CheckRequest("verify", "algebra = triangular(3)", {"theorem": "ds", "target_dim": 2,
                                                           "samples": ds_samples}, "certified"),
        CheckRequest("verify", "algebra = matrix(2)", {"theorem": "prop-n", "target_dim": 4}, "certified"),
        CheckRequest("verify", "algebra = triangular(2)", {"theorem": "prop-n", "target_dim": 1}, "certified"),
    ]
    for spec in members + [f"algebra = matrix(3); {reg}", f"algebra = triangular(2); {reg}",
                           f"algebra = triangular(3); {reg}"]:
        checks.append(CheckRequest("verify", spec, {"theorem": "lemma-f", "samples": lemma_samples},
                                   "certified"))
    checks.append(CheckRequest("solve", "algebra = remark", {"tag": "anti_derivation"}))
    return checks


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zpdlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zpdlab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--budget", type=int, default=None, help="zero pairs per check (default 50*dim)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check-zpd", "check-zjpd", "check-im-span", "check-condition-m"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("specs", nargs="+", metavar="SPEC")
    p = sub.add_parser("solve", parents=[common])
    p.add_argument("--tag", required=True, choices=[t.value for t in ConditionTag])
    p.add_argument("specs", nargs="+", metavar="SPEC")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--target-dim", type=int, default=None)
    p.add_argument("specs", nargs="+", metavar="SPEC")
    p = sub.add_parser("suite", parents=[common], help="run the built-in acceptance suite")
    p.add_argument("--lemma-samples", type=int, default=1000)
    p = sub.add_parser("batch", parents=[common], help="run checks listed in a JSON config file")
    p.add_argument("config")
    return parser


def _relative_to(base: str, spec: str) -> str:
    """Spec paths in a batch file are resolved against the batch file's directory."""
    candidate = os.path.join(base, spec)
    return candidate if "\n" not in spec and os.path.isfile(candidate) else spec


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(args.command, seed=args.seed, budget=args.budget, out=args.out)
    if args.command == "suite":
        cfg.checks = suite_checks(args.lemma_samples)
    elif args.command == "batch":
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        cfg.seed = data.get("seed", cfg.seed)
        cfg.budget = data.get("budget", cfg.budget)
        base = os.path.dirname(os.path.abspath(args.config))
        cfg.checks = [CheckRequest(c["check"], _relative_to(base, c["spec"]), c.get("params", {}),
                                   c.get("expect"), label=c["spec"])
                      for c in data.get("checks", [])]
    else:
        params = {}
        if args.command == "solve":
            params["tag"] = args.tag
        if args.command == "verify":
            params["theorem"] = args.theorem
            if args.samples is not None:
                params["samples"] = args.samples
            if args.target_dim is not None:
                params["target_dim"] = args.target_dim
        cfg.checks = [CheckRequest(args.command, s, dict(params)) for s in args.specs]
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        for req in cfg.checks:
            load_spec(req.spec)
    except (ZpdError, OSError, ValueError, KeyError) as exc:
        print(f"zpdlab: input error: {exc}", file=sys.stderr)
        return 2
    report = run(cfg)
    text = report.dumps()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
