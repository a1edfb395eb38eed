"""File formats: medium JSON schemas, delta-train and spectrum CSV/JSON.

Rational numbers travel as strings "num/den" (decimal strings are accepted
on input) so no precision is lost in transit.  Writers are atomic: output
goes to a temporary file that is renamed into place, so failures never
leave partial files.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .errors import DomainError
from .forward import DeltaTrain, SpectrumTrace
from .media import ImpedanceProfile, MediumParams, profile_to_params, validate_profile

PROFILE_FIELDS = {"C", "X"}
PARAMS_FIELDS = {"w", "tau"}


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _complex_pairs(raw, what):
    out = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise DomainError(f"{what} entries must be [re, im] pairs")
        out.append(complex(float(item[0]), float(item[1])))
    return out


def parse_profile(obj) -> ImpedanceProfile:
    """{"C": [[re, im], ...], "X": ["num/den" | decimal-string, ...]}"""
    if set(obj) != PROFILE_FIELDS:
        raise DomainError(
            f"profile JSON must have exactly the fields C and X, got {sorted(obj)}"
        )
    C = _complex_pairs(obj["C"], "C")
    X = [Fraction(str(x)) for x in obj["X"]]
    return validate_profile(C, X)


def parse_params(obj) -> MediumParams:
    """{"w": [[re, im], ...], "tau": ["num/den", ...]}"""
    if set(obj) != PARAMS_FIELDS:
        raise DomainError(
            f"params JSON must have exactly the fields w and tau, got {sorted(obj)}"
        )
    w = _complex_pairs(obj["w"], "w")
    tau = [Fraction(str(t)) for t in obj["tau"]]
    return MediumParams(tuple(w), tuple(tau))


def load_medium(path, renormalize: bool = False) -> MediumParams:
    """Read either medium schema from a JSON file and return (w, tau).

    With renormalize=True a profile whose increments do not sum to 1 is
    rescaled by the total before validation.
    """
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise DomainError("medium JSON must be an object")
    if set(obj) == PARAMS_FIELDS:
        return parse_params(obj)
    if set(obj) == PROFILE_FIELDS:
        if renormalize:
            C = _complex_pairs(obj["C"], "C")
            total = sum(C)
            if total == 0:
                raise DomainError("cannot renormalize increments summing to 0")
            obj = {"C": [[(c / total).real, (c / total).imag] for c in C], "X": obj["X"]}
        return profile_to_params(parse_profile(obj))
    raise DomainError(
        f"unrecognized medium schema with fields {sorted(obj)}; "
        "expected C/X or w/tau"
    )


def atomic_write_text(path, text: str):
    """Write text to path via a sibling temp file and an atomic rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".layerlab-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)  # mkstemp defaults to 0600
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def train_csv(train: DeltaTrain) -> str:
    lines = ["t_num,t_den,re,im"]
    for t, a in train.arrivals:
        lines.append(f"{t.numerator},{t.denominator},{a.real!r},{a.imag!r}")
    return "\n".join(lines) + "\n"


def train_json(train: DeltaTrain) -> str:
    obj = {
        "horizon": frac_str(train.horizon),
        "arrivals": [
            {"t": frac_str(t), "re": a.real, "im": a.imag}
            for t, a in train.arrivals
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def read_train_csv(path) -> list:
    """Rows of (Fraction time, complex amplitude) from a train CSV."""
    out = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "t_num,t_den,re,im":
            raise DomainError(f"unexpected train CSV header {header!r}")
        for line in fh:
            if not line.strip():
                continue
            n, d, re, im = line.strip().split(",")
            out.append((Fraction(int(n), int(d)), complex(float(re), float(im))))
    return out


def spectrum_csv(trace: SpectrumTrace) -> str:
    lines = ["sigma,re,im"]
    for s, v in zip(trace.sigma, trace.values):
        lines.append(f"{s!r},{v.real!r},{v.imag!r}")
    return "\n".join(lines) + "\n"


def spectrum_json(trace: SpectrumTrace) -> str:
    obj = {
        "sigma": list(trace.sigma),
        "values": [[v.real, v.imag] for v in trace.values],
    }
    return json.dumps(obj, indent=2) + "\n"


def spectrum_comparison_csv(trace: SpectrumTrace, recurrence) -> str:
    """Spectrum columns extended with the backward-recurrence reference."""
    lines = ["sigma,re,im,rec_re,rec_im,abs_diff"]
    for s, v, ref in zip(trace.sigma, trace.values, recurrence):
        lines.append(
            f"{s!r},{v.real!r},{v.imag!r},{ref.real!r},{ref.imag!r},{abs(v - ref)!r}"
        )
    return "\n".join(lines) + "\n"


def geodesic_csv(points) -> str:
    lines = ["r,theta"]
    for r, th in points:
        lines.append(f"{r!r},{th!r}")
    return "\n".join(lines) + "\n"
