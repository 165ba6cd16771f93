import numpy as np

from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.io_utils import _atomic_write_text
from fnls.utils.errors import LatticeError


def format_field(f: SpectralField) -> str:
    """Columnar text: '# key = value' header lines, then 'm, re, im' rows in ascending m."""
    lines = [
        f"# lambda = {f.spec.lam!r}",
        f"# num_points = {f.spec.num_points}",
    ]
    if f.alpha is not None:
        lines.append(f"# alpha = {f.alpha!r}")
    lines.append("# m, re, im")
    modes = f.spec.modes
    for pos in np.argsort(modes):
        c = f.coeffs[pos]
        lines.append(f"{int(modes[pos])}, {float(c.real)!r}, {float(c.imag)!r}")
    return "\n".join(lines) + "\n"


def write_field(path: str, f: SpectralField):
    _atomic_write_text(path, format_field(f))


def parse_field(text: str) -> SpectralField:
    header = {}
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:]
            if "=" in body:
                key, value = body.split("=", 1)
                header[key.strip()] = value.strip()
            continue
        m, re, im = (part.strip() for part in line.split(","))
        rows.append((int(m), float(re), float(im)))
    try:
        spec = TorusSpec(float(header["lambda"]), int(header["num_points"]))
    except KeyError as e:
        raise LatticeError(f"field header is missing {e}") from e
    alpha = float(header["alpha"]) if "alpha" in header else None
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    for m, re, im in rows:
        if not -(spec.num_points // 2) <= m < spec.num_points - spec.num_points // 2:
            raise LatticeError(f"mode index {m} has no storage slot on {spec}")
        coeffs[spec.slot(m)] = complex(re, im)
    return SpectralField(spec, coeffs, alpha)


def read_field(path: str) -> SpectralField:
    with open(path, "r") as f:
        return parse_field(f.read())
