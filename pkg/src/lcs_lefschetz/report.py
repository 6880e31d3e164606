"""Report documents (JSON) and their aligned-text rendering.

Every command builds one plain dict; the text form is rendered from that same
dict so both formats carry identical numbers.
"""

from __future__ import annotations

import json

from .exterior import Form, basis, format_monomial
from .invariant import InvariantModel
from .scalar import format_scalar

SCHEMA_VERSION = 1


def form_doc(model: InvariantModel, form: Form) -> dict:
    """``{"text": ..., "terms": [[monomial, scalar], ...]}`` in canonical order."""
    terms = []
    for j in form.degrees():
        for mono in basis(model.dim, j):
            c = form.terms.get(mono)
            if c is not None:
                terms.append([format_monomial(mono, model.coframe), format_scalar(c)])
    return {"text": model.fmt(form), "terms": terms}


def document(command: str, model: InvariantModel | None, result: dict, passed: bool) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command}
    if model is not None:
        doc["model"] = {"name": model.name, "dim": model.dim, "fingerprint": model.fingerprint()}
    doc["passed"] = passed
    doc["result"] = result
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# text


def _table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [len(h) for h in header]
    for r in rows:
        for i, c in enumerate(r):
            widths[i] = max(widths[i], len(c))
    fmt = "  ".join("{:<%d}" % w for w in widths)
    out = [fmt.format(*header).rstrip(), fmt.format(*["-" * w for w in widths]).rstrip()]
    out.extend(fmt.format(*r).rstrip() for r in rows)
    return out


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _forms(items: list[dict]) -> str:
    return ", ".join(f["text"] for f in items) if items else "-"


def _text_checks(res: dict) -> list[str]:
    rows = [[_mark(c["passed"]), c["name"], c.get("detail", "")] for c in res["checks"]]
    return _table(rows, ["status", "check", "detail"])


def _text_validate(res: dict) -> list[str]:
    lines = _text_checks(res)
    lines.append("")
    lines.append(f"completely solvable (declared): {res['completely_solvable']}")
    return lines


def _text_spaces(res: dict) -> list[str]:
    rows = []
    for s in res["spaces"]:
        label = s.get("label", "")
        rows.append([label, str(s["degree"]), s["k"], str(s["dim"]), _forms(s["basis"])])
    return _table(rows, ["space", "j", "k", "dim", "basis"])


def _text_cohomology(res: dict) -> list[str]:
    rows = [
        [str(s["degree"]), s["k"], str(s["dim"]), str(s["kernel_dim"]), str(s["image_dim"]), _forms(s["representatives"])]
        for s in res["spaces"]
    ]
    lines = _table(rows, ["j", "k", "dim", "dim ker", "dim im", "harmonic representatives"])
    if res.get("assumption"):
        lines += ["", res["assumption"]]
    return lines


def _text_hlc(res: dict) -> list[str]:
    rows = [
        [
            str(m["degree"]),
            m["k"],
            str(m["power"]),
            f"{m['source_dim']} -> {m['target_dim']}",
            str(m["rank"]),
            "yes" if m["iso"] else "no",
            _forms(m["kernel"]),
        ]
        for m in res["maps"]
    ]
    lines = _table(rows, ["j", "k", "r", "dims", "rank", "iso", "kernel"])
    lines.append("")
    if res["satisfied"]:
        lines.append("HLC holds")
    else:
        for m in res["maps"]:
            if not m["iso"]:
                wit = m["kernel"][0]["text"] if m["kernel"] else "(dimension mismatch)"
                lines.append(f"HLC fails at j={m['degree']}, kernel witness {wit}")
    if res.get("assumption"):
        lines += ["", res["assumption"]]
    return lines


def _text_identities(res: dict) -> list[str]:
    summary: dict[str, list[int]] = {}
    for r in res["results"]:
        s = summary.setdefault(r["identity"], [0, 0])
        s[1] += 1
        s[0] += r["passed"]
    rows = [[_mark(p == t), name, f"{p}/{t}"] for name, (p, t) in summary.items()]
    lines = [f"k values: {', '.join(res['k_values'])}", ""]
    lines += _table(rows, ["status", "identity", "passed (k, j)"])
    fails = [r for r in res["results"] if not r["passed"]]
    if fails:
        lines += ["", "failures:"]
        for r in fails:
            lines.append(f"  {r['identity']}  k={r['k']} j={r['degree']}: {r['witness']}")
    return lines


def _text_duality(res: dict) -> list[str]:
    rows = [[_mark(c["passed"]), c["k"], str(c["degree"]), c["name"], c.get("detail", "")] for c in res["checks"]]
    return _table(rows, ["status", "k", "j", "check", "detail"])


def _text_family(res: dict) -> list[str]:
    lines = [f"M_{res['m']}: dim {res['dim']}, written to {res['path']}" if res.get("path") else f"M_{res['m']}: dim {res['dim']}"]
    lines.append("validation: " + _mark(res["validation_passed"]))
    return lines


def _text_tables(res: dict) -> list[str]:
    rows = [[_mark(c["passed"]), f"m={c['m']}", c["cell"], c["expected"], c["computed"], c["note"]] for c in res["cells"]]
    return _table(rows, ["status", "m", "cell", "expected", "computed", "note"])


_TEXT = {
    "validate": _text_validate,
    "cohomology": _text_cohomology,
    "harmonic": _text_spaces,
    "hlc": _text_hlc,
    "identities": _text_identities,
    "sl2": _text_checks,
    "duality": _text_duality,
    "family": _text_family,
    "tables": _text_tables,
}


def to_text(doc: dict) -> str:
    head = f"{doc['command']}"
    if "model" in doc:
        head += f" [{doc['model']['name']}, dim {doc['model']['dim']}]"
    lines = [head, ""]
    lines += _TEXT[doc["command"]](doc["result"])
    lines += ["", "result: " + _mark(doc["passed"])]
    return "\n".join(lines) + "\n"
