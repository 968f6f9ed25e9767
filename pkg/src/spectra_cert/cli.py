"""``spectra-cert`` command line front end.

Matrix files: first line ``rows cols``, then one whitespace-separated row
per line.  Entries are integers or ``p/q``; with ``--hermitian`` also
``a+bi``, ``a-bi``, ``bi``, ``i``.  Blank lines and ``#`` comments are
ignored.

Every JSON document carries the input matrix, the certificate payload with
all rationals as exact strings, and a SHA-256 digest of its canonical form.
``verify`` re-checks the mathematics from the document alone.

Exit codes: 0 success, 1 domain failure (not positive definite, rejected
certificate, oracle disagreement), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .congruence import (
    CongruenceCertificate,
    Inertia,
    congruence_diagonalize,
    invert,
    negative_witness,
)
from .core import (
    Matrix,
    SymMatrix,
    format_scalar,
    inner_product,
    mat_vec,
    max_abs,
    parse_scalar,
)
from .errors import (
    NotPositiveDefinite,
    ParseError,
    SingularMatrix,
    SizeLimitExceeded,
    SpectraError,
    SymmetryError,
)
from .oracle import oracle_count_below
from .spectral import (
    EigenBracket,
    bisect_spectrum,
    eigen_count_below,
    mu_bracket,
    positivity_gap,
    spectrum_bound,
)

TOOL = "spectra-cert"
KINDS = ("inertia", "psd", "pd_factor", "gap", "spectrum", "mu", "oracle_check")


class VerificationError(SpectraError):
    pass


# -- matrix text format -----------------------------------------------------


def parse_matrix(text, hermitian: bool = False) -> SymMatrix:
    """Parse the matrix text format into a :class:`SymMatrix`.

    Raises :class:`ParseError` (1-based line/column) or :class:`SymmetryError`.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(1, exc.start + 1, "input is not valid UTF-8") from None
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens = []
        pos = 0
        for tok in body.split():
            col = body.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            tokens.append((col, tok))
        if tokens:
            lines.append((lineno, tokens))
    if not lines:
        raise ParseError(1, 1, "empty input")
    lineno, header = lines[0]
    if len(header) != 2:
        raise ParseError(lineno, 1, "header must be 'rows cols'")
    try:
        rows, cols = (int(tok) for _, tok in header)
    except ValueError:
        raise ParseError(lineno, 1, "header must be two integers") from None
    if rows < 1 or rows != cols:
        raise ParseError(lineno, 1, f"expected a square matrix, got {rows}x{cols}")
    body = lines[1:]
    if len(body) != rows:
        where = body[rows][0] if len(body) > rows else (lines[-1][0] + 1)
        raise ParseError(where, 1, f"expected {rows} rows, found {len(body)}")
    entries = []
    for lineno, tokens in body:
        if len(tokens) != cols:
            raise ParseError(lineno, 1, f"expected {cols} entries, found {len(tokens)}")
        row = []
        for col, tok in tokens:
            try:
                row.append(parse_scalar(tok, allow_complex=hermitian))
            except ValueError as exc:
                raise ParseError(lineno, col, str(exc)) from None
        entries.append(row)
    return SymMatrix(entries, hermitian)


def format_matrix(A: Matrix) -> str:
    n, m = A.shape
    lines = [f"{n} {m}"]
    lines += [" ".join(format_scalar(x) for x in row) for row in A.rows]
    return "\n".join(lines) + "\n"


# -- document encoding ------------------------------------------------------


def _mat(M: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in M.rows]


def _rats(xs) -> list:
    return [format_scalar(x) for x in xs]


def _bracket(b: EigenBracket) -> dict:
    return {
        "lo": str(b.lo),
        "hi": str(b.hi),
        "multiplicity": b.multiplicity,
        "exact": b.exact,
    }


def _cert_payload(cert: CongruenceCertificate) -> dict:
    payload = {"P": _mat(cert.P), "D": _rats(cert.D)}
    payload.update(cert.inertia().as_dict())
    return payload


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    return "sha256:" + hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()


def make_document(kind: str, A: SymMatrix, payload: dict, pivot: str = "max") -> dict:
    doc = {
        "tool": TOOL,
        "version": __version__,
        "kind": kind,
        "mode": "hermitian" if A.hermitian else "real",
        "pivot": pivot,
        "matrix": _mat(A),
        "payload": payload,
    }
    doc["digest"] = digest(doc)
    return doc


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- certificate builders ---------------------------------------------------


def build(kind: str, A: SymMatrix, pivot: str = "max", eps=None, **opts) -> tuple[dict, int]:
    """Run one operation and return ``(document, exit_code)``."""
    if kind == "inertia":
        cert = congruence_diagonalize(A, pivot)
        return make_document(kind, A, _cert_payload(cert), pivot), 0
    if kind == "psd":
        cert = congruence_diagonalize(A, pivot)
        payload = _cert_payload(cert)
        payload["psd"] = cert.inertia().n_minus == 0
        w = None if payload["psd"] else negative_witness(A, pivot)
        payload["witness"] = None if w is None else _rats(w)
        return make_document(kind, A, payload, pivot), 0
    if kind == "pd_factor":
        cert = congruence_diagonalize(A, pivot)
        payload = _cert_payload(cert)
        ok = payload["n_minus"] == 0 and payload["n_zero"] == 0
        payload["positive_definite"] = ok
        if not ok:
            payload["error"] = "NotPositiveDefinite"
        return make_document(kind, A, payload, pivot), 0 if ok else 1
    if kind == "gap":
        try:
            gap = positivity_gap(A, pivot)
        except NotPositiveDefinite as exc:
            payload = _cert_payload(exc.certificate)
            payload["positive_definite"] = False
            payload["error"] = "NotPositiveDefinite"
            return make_document(kind, A, payload, pivot), 1
        payload = _cert_payload(gap.cert)
        payload.update(
            positive_definite=True,
            P_inv=_mat(gap.p_inv),
            p_inv_max=str(gap.p_inv_max),
            gamma=str(gap.gamma),
        )
        return make_document(kind, A, payload, pivot), 0
    if kind == "spectrum":
        brackets = bisect_spectrum(A, eps, pivot, workers=opts.get("workers"))
        payload = {"eps": str(Fraction(eps)), "brackets": [_bracket(b) for b in brackets]}
        return make_document(kind, A, payload, pivot), 0
    if kind == "mu":
        b = mu_bracket(A, eps, pivot)
        payload = {"eps": str(Fraction(eps)), "bracket": _bracket(b)}
        return make_document(kind, A, payload, pivot), 0
    if kind == "oracle_check":
        probes = oracle_probes(A, opts.get("random_probes", 10), opts.get("seed", 0))
        results = []
        for t in probes:
            s = eigen_count_below(A, t, pivot)
            o = oracle_count_below(A, t)
            results.append({"t": str(t), "spectral": list(s), "oracle": list(o)})
        agree = all(r["spectral"] == r["oracle"] for r in results)
        payload = {"agree": agree, "results": results}
        return make_document(kind, A, payload, pivot), 0 if agree else 1
    raise ValueError(f"unknown kind {kind!r}")


def oracle_probes(A: SymMatrix, n_random: int = 10, seed: int = 0) -> list[Fraction]:
    """Deterministic probe set: a grid over ``[-R-1, R+1]`` plus seeded random rationals."""
    R = spectrum_bound(A) + 1
    grid = [-R + 2 * R * Fraction(k, 16) for k in range(17)]
    rng = random.Random(seed)
    extra = [
        Fraction(rng.randint(-1000, 1000), rng.randint(1, 50)) * R / 20
        for _ in range(n_random)
    ]
    return sorted(set(grid + extra))


# -- verification -----------------------------------------------------------


def _need(cond: bool, reason: str):
    if not cond:
        raise VerificationError(reason)


def _rational(s) -> Fraction:
    _need(isinstance(s, str), f"expected a rational string, got {s!r}")
    try:
        x = parse_scalar(s)
    except ValueError:
        raise VerificationError(f"malformed rational {s!r}") from None
    _need(str(x) == s, f"non-canonical rational {s!r}")
    return x


def _scalar(s, hermitian: bool):
    _need(isinstance(s, str), f"expected a scalar string, got {s!r}")
    try:
        x = parse_scalar(s, allow_complex=hermitian)
    except ValueError:
        raise VerificationError(f"malformed scalar {s!r}") from None
    _need(format_scalar(x) == s, f"non-canonical scalar {s!r}")
    return x


def _matrix(rows, hermitian: bool, n: int) -> Matrix:
    _need(isinstance(rows, list) and len(rows) == n, "matrix has the wrong number of rows")
    for r in rows:
        _need(isinstance(r, list) and len(r) == n, "matrix row has the wrong length")
    return Matrix([[_scalar(x, hermitian) for x in r] for r in rows], hermitian)


def _int(x) -> int:
    _need(isinstance(x, int) and not isinstance(x, bool), f"expected an integer, got {x!r}")
    return x


def _verify_cert(payload, A) -> CongruenceCertificate:
    n = A.n
    P = _matrix(payload.get("P"), A.hermitian, n)
    D = payload.get("D")
    _need(isinstance(D, list) and len(D) == n, "D has the wrong length")
    cert = CongruenceCertificate(P, tuple(_rational(d) for d in D))
    _need(cert.verify(A), "Pᴴ·D·P does not reproduce the matrix")
    try:
        invert(P)
    except SingularMatrix:
        raise VerificationError("P is singular") from None
    claimed = Inertia(
        _int(payload.get("n_plus")), _int(payload.get("n_minus")), _int(payload.get("n_zero"))
    )
    _need(claimed == cert.inertia(), "inertia does not match the signs of D")
    return cert


def _verify_bracket(A, raw, eps) -> EigenBracket:
    _need(isinstance(raw, dict), "bracket must be an object")
    exact = raw.get("exact")
    _need(isinstance(exact, bool), "bracket 'exact' must be a boolean")
    try:
        b = EigenBracket(
            _rational(raw.get("lo")), _rational(raw.get("hi")), _int(raw.get("multiplicity")), exact
        )
    except ValueError as exc:
        raise VerificationError(f"invalid bracket: {exc}") from None
    below_lo, at_lo = eigen_count_below(A, b.lo)
    if b.exact:
        _need(at_lo == b.multiplicity, f"{b.lo} is not an eigenvalue of multiplicity {b.multiplicity}")
    else:
        _need(b.width <= eps, f"bracket [{b.lo}, {b.hi}] is wider than eps")
        below_hi, at_hi = eigen_count_below(A, b.hi)
        _need(at_lo == 0 and at_hi == 0, "non-exact bracket endpoint is an eigenvalue")
        _need(below_hi - below_lo == b.multiplicity, "bracket multiplicity does not match counts")
    return b


def _verify_payload(kind, payload, A):
    _need(isinstance(payload, dict), "payload must be an object")
    if kind == "inertia":
        _verify_cert(payload, A)
    elif kind == "psd":
        cert = _verify_cert(payload, A)
        psd = payload.get("psd")
        _need(psd == (cert.inertia().n_minus == 0) and isinstance(psd, bool), "psd flag is wrong")
        w = payload.get("witness")
        if psd:
            _need(w is None, "a PSD matrix cannot have a negative witness")
        else:
            _need(isinstance(w, list) and len(w) == A.n, "witness has the wrong length")
            v = tuple(_scalar(x, A.hermitian) for x in w)
            q = inner_product(v, mat_vec(A, v))
            _need((q.re if A.hermitian else q) < 0, "witness does not give a negative form value")
    elif kind in ("pd_factor", "gap"):
        cert = _verify_cert(payload, A)
        ine = cert.inertia()
        pd = ine.n_minus == 0 and ine.n_zero == 0
        _need(payload.get("positive_definite") is pd, "positive_definite flag is wrong")
        if not pd:
            _need(payload.get("error") == "NotPositiveDefinite", "missing error tag")
        elif kind == "gap":
            p_inv = _matrix(payload.get("P_inv"), A.hermitian, A.n)
            _need(cert.P @ p_inv == Matrix.identity(A.n, A.hermitian), "P·P_inv != I")
            p_inv_max = _rational(payload.get("p_inv_max"))
            _need(p_inv_max == max_abs(p_inv), "p_inv_max does not match P_inv")
            sq = p_inv_max if A.hermitian else p_inv_max**2
            gamma = _rational(payload.get("gamma"))
            _need(gamma == min(cert.D) / (A.n**3 * sq), "gamma does not match the certificate")
            _need(gamma > 0, "gamma must be positive")
    elif kind in ("spectrum", "mu"):
        eps = _rational(payload.get("eps"))
        _need(eps > 0, "eps must be positive")
        if kind == "mu":
            b = _verify_bracket(A, payload.get("bracket"), eps)
            below, at = eigen_count_below(A, b.lo)
            _need(below == 0, "eigenvalues lie below the claimed least bracket")
        else:
            raw = payload.get("brackets")
            _need(isinstance(raw, list) and raw, "brackets must be a non-empty list")
            bs = [_verify_bracket(A, r, eps) for r in raw]
            for a, b in zip(bs, bs[1:]):
                ok = a.hi < b.lo if (a.exact or b.exact) else a.hi <= b.lo
                _need(ok, "brackets are not disjoint and ascending")
            _need(sum(b.multiplicity for b in bs) == A.n, "multiplicities do not sum to n")
    elif kind == "oracle_check":
        results = payload.get("results")
        _need(isinstance(results, list) and results, "results must be a non-empty list")
        agree = True
        for r in results:
            _need(isinstance(r, dict), "result must be an object")
            t = _rational(r.get("t"))
            s = list(eigen_count_below(A, t))
            o = list(oracle_count_below(A, t))
            _need(r.get("spectral") == s, f"spectral count at {t} is wrong")
            _need(r.get("oracle") == o, f"oracle count at {t} is wrong")
            agree = agree and s == o
        _need(payload.get("agree") is agree, "agree flag is wrong")
    else:
        raise VerificationError(f"unknown kind {kind!r}")


def verify_document(doc) -> None:
    """Raise :class:`VerificationError` unless ``doc`` is a valid certificate."""
    _need(isinstance(doc, dict), "document must be a JSON object")
    expected = {"tool", "version", "kind", "mode", "pivot", "matrix", "payload", "digest"}
    _need(set(doc) == expected, "unexpected or missing top-level keys")
    _need(doc["tool"] == TOOL, "not a spectra-cert document")
    _need(doc["version"] == __version__, f"unsupported version {doc['version']!r}")
    _need(doc["digest"] == digest(doc), "digest mismatch")
    _need(doc["kind"] in KINDS, f"unknown kind {doc['kind']!r}")
    _need(doc["mode"] in ("real", "hermitian"), "mode must be 'real' or 'hermitian'")
    _need(doc["pivot"] in ("max", "first"), "pivot must be 'max' or 'first'")
    hermitian = doc["mode"] == "hermitian"
    rows = doc["matrix"]
    _need(isinstance(rows, list) and rows, "matrix must be a non-empty list")
    M = _matrix(rows, hermitian, len(rows))
    try:
        A = SymMatrix(M.rows, hermitian)
    except SymmetryError as exc:
        raise VerificationError(str(exc)) from None
    _verify_payload(doc["kind"], doc["payload"], A)


# -- text rendering ---------------------------------------------------------


def render_text(doc: dict) -> str:
    p = doc.get("payload", {})
    kind = doc.get("kind")
    out = [f"# {kind}"]
    if "D" in p:
        out.append("D = (" + ", ".join(p["D"]) + ")")
        out.append("P =")
        out += ["  " + "  ".join(r) for r in p["P"]]
        out.append(f"inertia: n_plus={p['n_plus']} n_minus={p['n_minus']} n_zero={p['n_zero']}")
    for key in ("psd", "positive_definite", "p_inv_max", "gamma", "eps", "agree"):
        if key in p:
            out.append(f"{key}: {p[key]}")
    if p.get("witness"):
        out.append("witness: (" + ", ".join(p["witness"]) + ")")
    brackets = p.get("brackets") or ([p["bracket"]] if "bracket" in p else [])
    for b in brackets:
        if b["exact"]:
            out.append(f"eigenvalue {b['lo']}  (multiplicity {b['multiplicity']}, exact)")
        else:
            out.append(f"({b['lo']}, {b['hi']})  multiplicity {b['multiplicity']}")
    for r in p.get("results", []):
        flag = "ok" if r["spectral"] == r["oracle"] else "MISMATCH"
        out.append(f"t={r['t']}: spectral={tuple(r['spectral'])} oracle={tuple(r['oracle'])} {flag}")
    if "error" in p:
        out.append(f"error: {p['error']}")
    return "\n".join(out) + "\n"


# -- entry point ------------------------------------------------------------


def _eps(text: str) -> Fraction:
    try:
        x = parse_scalar(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("eps must be positive")
    return x


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hermitian", action="store_true", help="Gaussian-rational Hermitian input")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.add_argument("--pivot", choices=("max", "first"), default="max")
    common.set_defaults(fmt="json")

    parser = argparse.ArgumentParser(
        prog=TOOL, description="Exact eigenvalue certificates for symmetric matrices."
    )
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("inertia", "congruence certificate and inertia"),
        ("psd", "positive semidefiniteness with certificate / witness"),
        ("certify-pd", "positive definite certificate (all d_i > 0)"),
        ("gap", "certified positive lower bound on the least eigenvalue"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("matrix")
    p = sub.add_parser("eig", parents=[common], help="bracket every eigenvalue")
    p.add_argument("--eps", type=_eps, required=True)
    p.add_argument("--workers", type=int, default=None, help="refine sub-intervals in parallel")
    p.add_argument("matrix")
    p = sub.add_parser("mu", parents=[common], help="bracket the least eigenvalue")
    p.add_argument("--eps", type=_eps, required=True)
    p.add_argument("matrix")
    p = sub.add_parser("verify", parents=[common], help="re-check a certificate document")
    p.add_argument("certificate")
    p = sub.add_parser("oracle-check", parents=[common], help="cross-check counts against the oracle")
    p.add_argument("--probes", type=int, default=10, help="number of random probes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("matrix")
    return parser


_KIND = {
    "inertia": "inertia",
    "psd": "psd",
    "certify-pd": "pd_factor",
    "gap": "gap",
    "eig": "spectrum",
    "mu": "mu",
    "oracle-check": "oracle_check",
}


def _emit(doc: dict, fmt: str, out):
    out.write(dump_document(doc) if fmt == "json" else render_text(doc))


def _error(kind: str, message: str, fmt: str, out, **extra):
    doc = {"tool": TOOL, "version": __version__, "kind": "error", "error": kind, "message": message}
    doc.update(extra)
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"error: {kind}: {message}\n")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.fmt

    if args.command == "verify":
        try:
            doc = json.loads(_read(args.certificate).decode("utf-8"))
        except OSError as exc:
            _error("IOError", str(exc), fmt, out)
            return 2
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            _error("ParseError", f"not a JSON document: {exc}", fmt, out)
            return 2
        try:
            verify_document(doc)
        except (VerificationError, SizeLimitExceeded) as exc:
            result = {"verified": False, "reason": str(exc)}
            code = 1
        else:
            result = {"verified": True, "checked_kind": doc["kind"]}
            code = 0
        if fmt == "json":
            out.write(json.dumps(result, indent=2, sort_keys=True) + "\n")
        else:
            out.write(("verified" if code == 0 else f"REJECTED: {result['reason']}") + "\n")
        return code

    try:
        A = parse_matrix(_read(args.matrix), hermitian=args.hermitian)
    except OSError as exc:
        _error("IOError", str(exc), fmt, out)
        return 2
    except ParseError as exc:
        _error("ParseError", exc.reason, fmt, out, line=exc.line, column=exc.column)
        return 2
    except SymmetryError as exc:
        _error("SymmetryError", str(exc), fmt, out, i=exc.i, j=exc.j)
        return 2

    kind = _KIND[args.command]
    opts = {}
    if kind == "spectrum":
        opts["workers"] = args.workers
    if kind == "oracle_check":
        opts.update(random_probes=args.probes, seed=args.seed)
    try:
        doc, code = build(kind, A, args.pivot, getattr(args, "eps", None), **opts)
    except SizeLimitExceeded as exc:
        _error("SizeLimitExceeded", str(exc), fmt, out)
        return 1
    _emit(doc, fmt, out)
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
