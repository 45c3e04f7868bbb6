"""Report assembly and deterministic serialization (JSON, CSV, ASCII).

Every report is a plain dict with a ``"kind"`` key; :func:`emit_report`
dispatches on it.  JSON output uses sorted keys and rationals as ``"p/q"``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ._exact import fmt_fraction
from .algebra import AlgebraParams
from .cyclic import CyclicSpectrumSpec, OmegaMatch, extract_omegas, rescaled_spectrum
from .fock import FockRep, RelationReport
from .pssqm import (
    Figure2Panel,
    PssqmConfig,
    PssqmReport,
    PssqmSystem,
    general_trilinear_check,
    sol1_coefficients,
)
from .spectrum import (
    Spectrum,
    SpectrumClass,
    lowest_levels,
    _signature_of,
)

FORMATS = ("json", "csv", "ascii")

FIGURE1 = {
    "1a": ("I.1.1", (0, 1)),
    "1b": ("II.1.1.1", (4, -3)),
    "1c": ("III.1.1.1", (6, -7)),
}


def spectrum_report(s: Spectrum, cls: Optional[SpectrumClass] = None) -> dict:
    return {
        "kind": "spectrum",
        "params": s.params.to_json(),
        "levels": [lv.to_json() for lv in s.levels],
        "degeneracy_groups": [sorted(g) for g in s.degeneracy_groups],
        "signature": _signature_of(lowest_levels(s.params, len(s.levels))),
        "class": cls.to_json() if cls is not None else None,
    }


def classification_report(p: AlgebraParams, cls: SpectrumClass) -> dict:
    out = {"kind": "classification", "params": p.to_json()}
    out.update(cls.to_json())
    return out


def relation_report(rep: FockRep, rr: RelationReport) -> dict:
    out = {"kind": "relations", "params": rep.params.to_json(), "dim": rep.dim}
    out.update(rr.to_json())
    return out


def omegas_report(p: AlgebraParams, spec: CyclicSpectrumSpec) -> dict:
    return {
        "kind": "cyclic-extract",
        "params": p.to_json(),
        "omega": [fmt_fraction(w) for w in spec.omega],
        "Omega": fmt_fraction(spec.Omega),
    }


def match_report(spec: CyclicSpectrumSpec, m: OmegaMatch, levels: int) -> dict:
    out = {"kind": "cyclic-match", "omega": [fmt_fraction(w) for w in spec.omega]}
    out.update(m.to_json())
    out["verification"] = {
        "rescaled_spectrum": [fmt_fraction(e) for e in rescaled_spectrum(m.params, levels)],
        "expected": [fmt_fraction(e) for e in spec.levels(levels)],
        "omega": [fmt_fraction(w) for w in extract_omegas(m.params).omega],
    }
    return out


def pssqm_report(c: PssqmConfig, s: PssqmSystem, rep: PssqmReport,
                 checks: Sequence[str] = ("rs", "bd")) -> dict:
    residuals = {k: rep.residuals[k] for k in ("q3", "commutator")}
    passes = {"q3": rep.passes["q3"], "q2_nonzero": rep.passes["q2_nonzero"],
              "commutator": rep.passes["commutator"]}
    for k in ("rs", "bd"):
        if k in checks:
            residuals[k] = rep.residuals[k]
            passes[k] = rep.passes[k]
    if "general" in checks:
        u, v, w = sol1_coefficients(s.eta1, s.eta2)
        residuals["general"] = general_trilinear_check(s, u, v, w)
        passes["general"] = residuals["general"] < rep.tol
    row, col, val = rep.q2_witness
    return {
        "kind": "pssqm",
        "params": c.params.to_json(),
        "mu": c.mu,
        "eta_squared": fmt_fraction(c.eta_sq),
        "phi": c.phi,
        "dim": c.dim,
        "tol": rep.tol,
        "r": [fmt_fraction(x) for x in s.r],
        "ground_energy": fmt_fraction(s.ground_energy),
        "susy_status": s.susy_status,
        "residuals": residuals,
        "passes": passes,
        "q2_witness": {"row": row, "col": col, "abs": abs(val)},
    }


def figure1_report(which: str, levels: int = 10) -> dict:
    """Rescaled spectrum behind one panel of the period-three figure."""
    label, alpha = FIGURE1[which]
    p = AlgebraParams(3, alpha)
    low = lowest_levels(p, levels)
    ground = low[0].energy
    spec = extract_omegas(p)
    return {
        "kind": "figure1",
        "panel": which,
        "type": label,
        "params": p.to_json(),
        "omega": [fmt_fraction(w) for w in spec.omega],
        "levels": [
            {"n": lv.n, "mu": lv.mu, "k": lv.k, "energy": fmt_fraction(lv.energy - ground)}
            for lv in low
        ],
    }


def figure2_report(p: AlgebraParams, panels: Sequence[Figure2Panel]) -> dict:
    return {"kind": "figure2", "params": p.to_json(), "panels": [pn.to_json() for pn in panels]}


# -- rendering ---------------------------------------------------------------

def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _csv(header: List[str], rows: List[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt_cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    return str(x)


def _flatten(d: dict, prefix: str = "") -> List[list]:
    rows = []
    for k in sorted(d):
        v = d[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows.extend(_flatten(v, key + "."))
        elif isinstance(v, list):
            rows.append([key, json.dumps(v, sort_keys=True)])
        else:
            rows.append([key, _fmt_cell(v)])
    return rows


def to_csv(report: dict) -> str:
    kind = report["kind"]
    if kind == "spectrum":
        return _csv(["n", "k", "mu", "energy"],
                    [[lv["n"], lv["k"], lv["mu"], lv["energy"]] for lv in report["levels"]])
    if kind == "figure1":
        return _csv(["n", "k", "mu", "energy"],
                    [[lv["n"], lv["k"], lv["mu"], lv["energy"]] for lv in report["levels"]])
    if kind == "figure2":
        rows = []
        for pn in report["panels"]:
            for lv in pn["levels"]:
                rows.append([pn["mu"], lv["n"], lv["sector"], lv["k"], lv["energy"],
                             lv["relative"], _fmt_cell(lv["qdag_target"])])
        return _csv(["panel_mu", "n", "sector", "k", "energy", "relative", "qdag_target"], rows)
    if kind == "relations":
        rows = [[k, repr(v), _fmt_cell(v < report["tol"])]
                for k, v in sorted(report["residuals"].items())]
        return _csv(["relation", "residual", "pass"], rows)
    if kind == "pssqm":
        rows = [[k, repr(v), _fmt_cell(report["passes"][k])]
                for k, v in sorted(report["residuals"].items())]
        return _csv(["relation", "residual", "pass"], rows)
    return _csv(["key", "value"], _flatten(report))


def _level_diagram(levels: List[dict], columns: Sequence[int], col_key: str,
                   value_key: str, notes: Optional[Dict[str, str]] = None) -> List[str]:
    """Rows from the highest energy down, one column per sector."""
    by_energy: Dict[Fraction, Dict[int, List[int]]] = {}
    for lv in levels:
        e = Fraction(lv[value_key])
        by_energy.setdefault(e, {}).setdefault(lv[col_key], []).append(lv["n"])
    width = max(6, max(len(fmt_fraction(e)) for e in by_energy) + 1)
    head = "energy".rjust(width) + " |" + "".join(f"  mu={c}".ljust(8) for c in columns)
    lines = [head.rstrip(), "-" * width + "-+" + "-" * (8 * len(columns))]
    for e in sorted(by_energy, reverse=True):
        cells = []
        for c in columns:
            ns = by_energy[e].get(c, [])
            cells.append(("  --" + ",".join(map(str, ns))) if ns else "")
        line = fmt_fraction(e).rjust(width) + " |" + "".join(x.ljust(8) for x in cells)
        if notes and fmt_fraction(e) in notes:
            line = line.rstrip().ljust(width + 2 + 8 * len(columns)) + "  " + notes[fmt_fraction(e)]
        lines.append(line.rstrip())
    return lines


def to_ascii(report: dict) -> str:
    kind = report["kind"]
    if kind == "spectrum":
        lam = report["params"]["lambda"]
        lines = [f"H0 spectrum, lambda={lam}, alpha={report['params']['alpha']}"]
        lines += _level_diagram(report["levels"], range(lam), "mu", "energy")
        lines.append(f"signature: {report['signature']}")
        return "\n".join(lines) + "\n"
    if kind == "figure1":
        lines = [f"figure {report['panel']}: type ({report['type']}), "
                 f"alpha={report['params']['alpha']}, omega={report['omega']}"]
        lines += _level_diagram(report["levels"], range(3), "mu", "energy")
        return "\n".join(lines) + "\n"
    if kind == "figure2":
        lines = []
        for pn in report["panels"]:
            lines.append(f"mu={pn['mu']} panel: ground energy {pn['ground_energy']} "
                         f"(drawn at 0)")
            by_n = {lv["n"]: lv for lv in pn["levels"]}
            longest = {}
            for lv in pn["levels"]:
                chain = [lv["n"]]
                while True:
                    t = by_n.get(chain[-1], {}).get("qdag_target")
                    if t is None or by_n[t]["relative"] != lv["relative"]:
                        break
                    chain.append(t)
                if len(chain) > 1 and len(chain) > len(longest.get(lv["relative"], ())):
                    longest[lv["relative"]] = chain
            notes = {e: f"Q{pn['mu']}+: " + " -> ".join(map(str, ch))
                     for e, ch in longest.items()}
            lines += _level_diagram(pn["levels"], pn["columns"], "sector", "relative", notes)
            lines.append("")
        return "\n".join(lines)
    rows = _flatten(report)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "ascii":
        return to_ascii(report)
    raise ValueError(f"unknown output format {fmt!r}")
