"""Command line interface and canonical report serialization.

Commands: construct, table, restrict, simplicity, bound, certify.  All
output is deterministic given (seed, prime): JSON is emitted with sorted
keys, two-space indent, integers only, and a trailing newline, so a
repeated run is byte-identical.  Exit codes: 0 on success or a true
verdict, 1 on a failed certificate or refused precondition, 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .exactfield import DEFAULT_PRIME, FieldSpec, SamplingError, SeededRng
from .cohomology import CohomologyTable, cohomology_table_exact, default_window
from .moduli import (
    RefusalError,
    StabilizerReport,
    WildnessReport,
    embedding_dimension,
    family_dimension,
    stabilizer_dimension,
    veronese_bound,
    wildness_certificate,
)
from .polyspace import RegularityError
from .presentation import (
    GenericityError,
    ShapeError,
    SurjectivityCertificate,
    build_kernel_bundle,
)
from .restriction import (
    AcmVerdict,
    DimensionError,
    ExactModeError,
    make_ci_variety,
    restricted_cohomology_table,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; one instance fully determines one run."""

    command: str
    n: int
    a: int = 1
    s: int = 3
    prime: int = DEFAULT_PRIME
    seed: int = 0
    t_min: int | None = None
    t_max: int | None = None
    ci_degrees: tuple[int, ...] = ()
    format: str = "markdown"
    output: str | None = None


def certificate_dict(cert: SurjectivityCertificate) -> dict:
    return {
        "surjective_at_degree": cert.surjective_at_degree,
        "searched_up_to": cert.searched_up_to,
        "h0_phi1_iso": cert.h0_phi1_iso,
        "seed": cert.seed,
        "counter": cert.counter,
    }


def stabilizer_dict(rep: StabilizerReport) -> dict:
    return {
        "n": rep.n,
        "a": rep.a,
        "stab_dimension": rep.stab_dimension,
        "simple": rep.simple,
        "kac_value": rep.kac_value,
        "system_rows": rep.system_rows,
        "system_cols": rep.system_cols,
    }


def table_dict(table: CohomologyTable) -> dict:
    return {
        "dim": table.dim,
        "t_min": table.t_min,
        "t_max": table.t_max,
        "cells": table.as_rows(),
        "provenance": table.provenance_rows(),
    }


def table_from_dict(data: dict) -> CohomologyTable:
    cells = {}
    prov = {}
    for i, row in enumerate(data["cells"]):
        for off, v in enumerate(row):
            cells[(i, data["t_min"] + off)] = v
    for i, row in enumerate(data["provenance"]):
        for off, v in enumerate(row):
            prov[(i, data["t_min"] + off)] = v
    return CohomologyTable(data["dim"], data["t_min"], data["t_max"], cells, prov)


def acm_dict(v: AcmVerdict) -> dict:
    return {
        "s": v.s,
        "dim": v.dim,
        "is_acm": v.is_acm,
        "witnesses": [list(w) for w in v.witnesses],
        "checked_twists": list(v.checked_twists),
        "missing_twists": list(v.missing_twists),
    }


def phi_dict(phi) -> dict:
    return {
        "n": phi.n,
        "a_tgt": phi.a_tgt,
        "b_src": phi.b_src,
        "coeffs": [
            [[int(c) for c in phi.coeffs[i, j]] for j in range(phi.b_src)]
            for i in range(phi.a_tgt)
        ],
    }


def wildness_dict(rep: WildnessReport) -> dict:
    out = {
        "n": rep.n,
        "a": rep.a,
        "s": rep.s,
        "prime": rep.prime,
        "seed": rep.seed,
        "counter": rep.counter,
        "variety": {
            "mode": rep.variety_mode,
            "degrees": list(rep.variety_degrees),
            "ambient": rep.n,
            "dim": rep.variety_dim,
        },
        "bundle_rank": rep.bundle_rank,
        "family_dim": rep.family_dim,
        "veronese_bound": rep.veronese,
        "embedding_dim": rep.embedding_dim,
        "certificate": certificate_dict(rep.certificate),
        "stabilizer": stabilizer_dict(rep.stabilizer),
        "vanishing_traces": [
            {
                "target_index": tr.target_index,
                "excluded_twists": list(tr.excluded_twists),
                "chain": [
                    {
                        "index": cell.index,
                        "offsets": list(cell.offsets),
                        "justification": cell.justification,
                    }
                    for cell in tr.chain
                ],
                "verified": tr.verified,
            }
            for tr in rep.traces
        ],
        "acm": acm_dict(rep.acm),
        "checks": dict(rep.checks),
        "verdict": rep.verdict,
    }
    if rep.table is not None:
        out["table"] = table_dict(rep.table)
    return out


def serialize_report(payload: dict) -> str:
    """Canonical JSON: sorted keys, indent 2, ints only, trailing newline."""
    body = dict(payload)
    body["tool_version"] = __version__
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def render_table_markdown(table: CohomologyTable, header: str) -> str:
    lines = [header, ""]
    twists = list(table.twists())
    lines.append("| h^i \\ t | " + " | ".join(str(t) for t in twists) + " |")
    lines.append("|" + "---|" * (len(twists) + 1))
    for i in range(table.dim + 1):
        row = [str(table.cell(i, t)) for t in twists]
        lines.append(f"| h^{i} | " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def _window(config: RunConfig, dim: int) -> tuple[int, int]:
    lo, hi = default_window(dim) if dim is not None else (None, None)
    if config.t_min is not None:
        lo = config.t_min
    if config.t_max is not None:
        hi = config.t_max
    return (lo, hi)


def _emit(text: str, config: RunConfig) -> None:
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(config: RunConfig) -> dict:
    return {"prime": config.prime, "seed": config.seed}


def _variety(config: RunConfig, rng: SeededRng, field: FieldSpec):
    return make_ci_variety(config.n, config.ci_degrees, rng, field)


def run(config: RunConfig) -> int:
    """Execute one command; returns the exit code, writing output as asked."""
    field = FieldSpec.prime(config.prime)
    rng = SeededRng(config.seed)
    if config.command == "construct":
        kb, cert = build_kernel_bundle(config.n, config.a, rng, field)
        payload = {
            **_meta(config),
            "n": config.n,
            "a": config.a,
            "bundle_rank": kb.rank,
            "certificate": certificate_dict(cert),
            "phi": phi_dict(kb.phi),
        }
        _emit(serialize_report(payload), config)
        return EXIT_OK
    if config.command == "table":
        kb, cert = build_kernel_bundle(config.n, config.a, rng, field)
        table = cohomology_table_exact(kb, _window(config, config.n))
        if config.format == "json":
            payload = {
                **_meta(config),
                "n": config.n,
                "a": config.a,
                "certificate": certificate_dict(cert),
                "table": table_dict(table),
            }
            _emit(serialize_report(payload), config)
        else:
            header = (
                f"cohomology of the rank-{kb.rank} kernel bundle on P^{config.n}, "
                f"a = {config.a}, seed {config.seed}, prime {config.prime}, "
                f"tool {__version__}"
            )
            _emit(render_table_markdown(table, header), config)
        return EXIT_OK
    if config.command == "restrict":
        x = _variety(config, rng, field)
        kb, cert = build_kernel_bundle(config.n, config.a, rng, field)
        table = restricted_cohomology_table(kb, x, _window(config, x.d))
        if config.format == "json":
            payload = {
                **_meta(config),
                "n": config.n,
                "a": config.a,
                "ci_degrees": list(config.ci_degrees),
                "certificate": certificate_dict(cert),
                "table": table_dict(table),
            }
            _emit(serialize_report(payload), config)
        else:
            header = (
                f"cohomology restricted to a degree-{list(config.ci_degrees)} "
                f"complete intersection in P^{config.n}, a = {config.a}, "
                f"seed {config.seed}, prime {config.prime}, tool {__version__}"
            )
            _emit(render_table_markdown(table, header), config)
        return EXIT_OK
    if config.command == "simplicity":
        kb, cert = build_kernel_bundle(config.n, config.a, rng, field)
        rep = stabilizer_dimension(kb.phi.transpose())
        payload = {
            **_meta(config),
            "n": config.n,
            "a": config.a,
            "certificate": certificate_dict(cert),
            "stabilizer": stabilizer_dict(rep),
        }
        _emit(serialize_report(payload), config)
        return EXIT_OK if rep.simple else EXIT_FAILED
    if config.command == "bound":
        payload = {
            **_meta(config),
            "n": config.n,
            "a": config.a,
            "s": config.s,
            "family_dim": family_dimension(config.n, config.a),
            "veronese_bound": veronese_bound(config.n),
        }
        x = make_ci_variety(config.n, config.ci_degrees)
        payload["embedding_dim"] = embedding_dimension(x, config.s)
        payload["variety_dim"] = x.d
        _emit(serialize_report(payload), config)
        return EXIT_OK
    if config.command == "certify":
        x = _variety(config, rng, field)
        rep = wildness_certificate(x, config.s, config.a, rng, field)
        _emit(serialize_report(wildness_dict(rep)), config)
        return EXIT_OK if rep.verdict else EXIT_FAILED
    raise ValueError(f"unknown command {config.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildrep",
        description="exact certificates for families of simple ACM bundles",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "construct": "sample a kernel bundle and report its certificates",
        "table": "exact cohomology table on the ambient projective space",
        "restrict": "exact cohomology table on a complete intersection",
        "simplicity": "stabilizer dimension of a sampled presentation",
        "bound": "dimension counts: family, Veronese bound, embedding",
        "certify": "full wildness certificate for one (X, s, a) instance",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True, help="ambient projective dimension")
        p.add_argument("--a", type=int, default=1, help="family parameter (bundle rank is n*a)")
        p.add_argument("--s", type=int, default=3, help="re-embedding degree")
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--t-min", type=int, default=None, dest="t_min")
        p.add_argument("--t-max", type=int, default=None, dest="t_max")
        p.add_argument(
            "--ci-degrees", type=int, nargs="*", default=[], dest="ci_degrees",
            help="degrees of the complete intersection forms (empty for P^n)",
        )
        default_fmt = "json" if name in ("construct", "simplicity", "bound", "certify") else "markdown"
        p.add_argument("--format", choices=("markdown", "json"), default=default_fmt)
        p.add_argument("--output", default=None, help="write to a file instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        n=args.n,
        a=args.a,
        s=args.s,
        prime=args.prime,
        seed=args.seed,
        t_min=args.t_min,
        t_max=args.t_max,
        ci_degrees=tuple(args.ci_degrees),
        format=args.format,
        output=args.output,
    )
    try:
        code = run(config)
    except (GenericityError, RefusalError, ExactModeError, RegularityError) as exc:
        sys.stderr.write(f"certificate failed: {exc}\n")
        code = EXIT_FAILED
    except (ShapeError, DimensionError, SamplingError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        code = EXIT_USAGE
    if argv is None:  # invoked as a console script
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
