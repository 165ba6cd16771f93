import os
import json

import numpy as np
import pandas as pd

from fnls.utils.errors import ReportIOError


# ---------- General Tools ----------
def _atomic_write_text(path: str, text: str):
    """Write text to <path>.tmp and rename it over path."""
    directory = os.path.dirname(path)
    tmp = path + ".tmp"
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(tmp, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise ReportIOError(f"Failed to write {path}: {e}") from e


def _save_json(path, state: dict):
    _atomic_write_text(path, json.dumps(state, indent=2, sort_keys=False) + "\n")


def save_csv(path: str, frame: pd.DataFrame):
    """Atomic CSV export (no index column)."""
    _atomic_write_text(path, frame.to_csv(index=False, float_format="%.17g"))


def to_jsonable(value):
    """Convert numpy scalars/arrays and tuples into plain JSON types."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value
