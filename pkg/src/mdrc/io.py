"""CSV traces and plain-text gain/metrics reports."""

import numpy as np

from .matlin import eigenvalues
from .plant import extend, validate_plant
from .synthesis import gesobc_gain, validate_observer_gain

BASE_COLUMNS = ("k", "t", "x1", "x2", "u", "d", "y_o")
ESO_COLUMNS = ("xhat1", "xhat2", "dhat", "e1", "e2", "ed")


def fmt(value):
    """12 significant digits; integers (the step index) stay integral."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if v == 0.0:
        v = 0.0  # no "-0"
    return f"{v:.12g}"


def trace_columns(trace):
    return BASE_COLUMNS + (ESO_COLUMNS if trace.has_observer else ())


def trace_rows(trace):
    cols = [trace.k, trace.t, trace.x[:, 0], trace.x[:, 1], trace.u, trace.d, trace.y_o]
    if trace.has_observer:
        cols += [trace.x_hat[:, 0], trace.x_hat[:, 1], trace.d_hat, trace.e[:, 0], trace.e[:, 1], trace.e[:, 2]]
    for i in range(len(trace)):
        yield [fmt(int(trace.k[i]))] + [fmt(c[i]) for c in cols[1:]]


def trace_csv(trace):
    lines = [",".join(trace_columns(trace))]
    lines.extend(",".join(row) for row in trace_rows(trace))
    return "\n".join(lines) + "\n"


def write_trace_csv(trace, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trace_csv(trace))


def _fmt_matrix(m):
    m = np.atleast_2d(m)
    return "[" + "; ".join(" ".join(fmt(v) for v in row) for row in m) + "]"


def _fmt_complex(z):
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}j"


def gain_report(plant, gains, extra=None):
    """Ordered ``(key, value-string)`` pairs describing ``gains`` for ``plant``."""
    report = validate_plant(plant)
    A_cl = plant.A + plant.b_u @ gains.K
    items = [
        ("K", _fmt_matrix(gains.K)),
        ("closed_loop_poles", " ".join(_fmt_complex(z) for z in eigenvalues(A_cl))),
        ("K_p", _fmt_matrix(gains.K_p)),
        ("g0", fmt(gains.g0)),
        ("g1", fmt(gains.g1)),
        ("K_d", fmt(gains.K_d)),
    ]
    try:
        items.append(("gesobc_K_d", fmt(gesobc_gain(plant.A, plant.b_u, plant.b_d, plant.c_o, gains.K))))
    except Exception as exc:  # report stays printable for any plant
        items.append(("gesobc_K_d", f"unavailable ({exc})"))
    if gains.L_bar is not None:
        items.append(("L_bar", _fmt_matrix(gains.L_bar)))
        items.append(("observer_spectral_radius", fmt(validate_observer_gain(extend(plant), gains.L_bar))))
    items += [
        ("controllable", str(report.controllable).lower()),
        ("assumption1_co_bu_zero", str(report.assumption1).lower()),
        ("mismatched", str(report.mismatched).lower()),
        ("nonzero_channels", str(report.nonzero_channels).lower()),
    ]
    if extra:
        items += [(k, v if isinstance(v, str) else fmt(v)) for k, v in extra]
    return items


def write_report(items, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key, value in items:
            fh.write(f"{key} = {value if isinstance(value, str) else fmt(value)}\n")


def read_report(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if "=" in line:
                key, value = line.split("=", 1)
                out[key.strip()] = value.strip()
    return out
