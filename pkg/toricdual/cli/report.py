"""
Report envelopes and their human-readable rendering.

Every command returns a :class:`ReportEnvelope`. With ``--json`` it is
printed as key-sorted JSON; otherwise the ``render_*`` helpers lay the
results out in direct-sum notation.
"""

import json
from typing import Any, Dict, List, Optional, Sequence

from pydantic import Field

from toricdual.duality.parameters import ParametersBase

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NOT_REFLEXIVE = 3
EXIT_TORIC_CONTRIBUTION = 4


class ReportEnvelope(ParametersBase):
    command: str
    inputs: str
    results: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)
    exit_status: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportEnvelope":
        return cls.model_validate(json.loads(text))


def format_gram(gram: Sequence[Sequence[int]], indent: str = "    ") -> str:
    if not gram:
        return f"{indent}(empty)"
    width = max(len(str(x)) for row in gram for x in row)
    return "\n".join(
        indent + " ".join(str(x).rjust(width) for x in row) for row in gram
    )


def _flag(value: Optional[bool]) -> str:
    return {True: "ok", False: "FAILED", None: "-"}[value]


def render_dual(results: Dict[str, Any]) -> str:
    lines = [f"vertices: {results['vertices']}"]
    lines.append(f"reflexive: {results['reflexive']}")
    if results.get("dual_vertices") is not None:
        lines.append(f"dual vertices: {results['dual_vertices']}")
    if results.get("l0") is not None:
        lines.append(f"L0: {results['l0']}")
    lines.append(f"lattice points: {results['lattice_points']}")
    return "\n".join(lines)


def render_picard(report: Dict[str, Any], title: str = "Picard lattice") -> str:
    if report.get("gram") is None:
        return f"{title}: not computed, toric contribution L0 = {report['l0']}"
    rank, disc = report["rho"], abs(report["discriminant"])
    lines = [f"{title}: {report['name']} ({rank},{disc})"]
    lines.append(
        f"  rays {report['rays']}, dropped {report['dropped_rays']}, "
        f"ray-count formula {report['rho_formula']}"
    )
    lines.append(
        f"  signature {tuple(report['signature'])}, discriminant "
        f"{report['discriminant']}, invariant factors {report['invariant_factors']}"
    )
    lines.append(f"  basis D{', D'.join(str(k) for k in report['basis'])}")
    lines.append(format_gram(report["gram"]))
    if report.get("elliptic") is not None:
        lines.append(f"  U splits off: {report['elliptic']}")
    lines.append(
        f"  primitive embedding: {report['nikulin']} "
        f"({'holds' if report['nikulin_passed'] else 'not shown'})"
    )
    return "\n".join(lines)


def render_certificates(certificates: List[Dict[str, Any]]) -> str:
    lines = []
    for c in certificates:
        state = "pass" if c["passed"] else "FAIL"
        suffix = " (reordered)" if c.get("aligned") else ""
        lines.append(f"  {c['side']} -> {c['target']}: {state}{suffix}")
        if not c["passed"] and c.get("reason"):
            lines.append(f"    {c['reason']}")
        if c.get("gram") is not None:
            lines.append(format_gram(c["gram"], indent="    "))
    return "\n".join(lines)


def render_verdict(verdict: Dict[str, Any]) -> str:
    lines = [f"pair {verdict['id']}: {'PASS' if verdict['passed'] else 'FAIL'}"]
    for name, value in verdict["flags"].items():
        lines.append(f"  {name}: {_flag(value)}")
    for side in ("pic_delta", "pic_delta_prime"):
        report = verdict.get(side)
        if report is not None:
            lines.append(
                f"  {side}: {report['name']} "
                f"({report['rho']},{abs(report['discriminant'])})"
            )
    for m in verdict.get("mismatches", []):
        lines.append(f"  mismatch: {m}")
    if verdict.get("certificates"):
        lines.append("  certificates:")
        lines.append(render_certificates(verdict["certificates"]))
    return "\n".join(lines)


def render_table(rows: List[Dict[str, Any]]) -> str:
    header = ("No.", "Pic Δ′", "(rk,|disc|)", "Pic Δ", "(rk,|disc|)", "dual")
    body = [
        (
            r["id"],
            r["pic_delta_prime"],
            r["invariants_delta_prime"],
            r["pic_delta"],
            r["invariants_delta"],
            _flag(r["lattice_duality_ok"]),
        )
        for r in rows
    ]
    widths = [max(len(str(x)) for x in column) for column in zip(header, *body)]
    return "\n".join(
        "  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip()
        for row in (header, *body)
    )
