"""
File formats: CSV matrices, edge lists, JSON reports and run manifests.
"""

import json
import math
import os
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

import config
from dissim_core import DissimilarityError, DissimilarityMatrix, as_array, validate_matrix


def _ensure_parent(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def read_matrix(path: str, validate: bool = True):
    """
    Load an n x n headerless CSV matrix.

    Args:
        path (str): CSV file
        validate (bool): run validate_matrix on the values

    Returns:
        DissimilarityMatrix, or a plain array when validate is False
    """
    try:
        frame = pd.read_csv(path, header=None, float_precision='round_trip')
    except pd.errors.EmptyDataError:
        raise DissimilarityError(f"{path} is empty")
    except pd.errors.ParserError as e:
        raise DissimilarityError(f"{path} is not a valid CSV matrix: {e}")

    try:
        values = frame.to_numpy(dtype=float)
    except (TypeError, ValueError) as e:
        raise DissimilarityError(f"{path} contains non-numeric entries: {e}")
    if validate:
        return validate_matrix(values)
    return values


def write_matrix(matrix, path: str) -> str:
    """Write a matrix as headerless CSV with 17 significant digits."""
    _ensure_parent(path)
    pd.DataFrame(as_array(matrix)).to_csv(path, header=False, index=False, float_format='%.17g')
    return path


def read_edge_list(path: str) -> List[Tuple[int, int]]:
    """'u v' pairs, one per line; blank lines and '#' comments are skipped."""
    edges = []
    with open(path) as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith('#'):
                continue
            parts = text.split()
            if len(parts) != 2:
                raise DissimilarityError(f"{path}:{lineno}: expected 'u v', got '{text}'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise DissimilarityError(f"{path}:{lineno}: vertex ids must be integers, got '{text}'")
            if u < 0 or v < 0:
                raise DissimilarityError(f"{path}:{lineno}: vertex ids must be non-negative")
            edges.append((u, v))
    if not edges:
        raise DissimilarityError(f"{path} contains no edges")
    return edges


def to_jsonable(value):
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        if math.isnan(value):
            return None
        return value
    return value


def write_json(data: dict, path: str) -> str:
    """Write a report; infinities become the strings 'inf' / '-inf'."""
    _ensure_parent(path)
    with open(path, 'w') as handle:
        json.dump(to_jsonable(data), handle, indent=2)
    return path


def write_records(records: pd.DataFrame, path: str) -> str:
    _ensure_parent(path)
    records.to_csv(path, index=False, float_format='%.17g')
    return path


@dataclass
class RunManifest:
    command: str
    inputs: List[str] = field(default_factory=list)
    settings: dict = field(default_factory=dict)
    version: str = config.VERSION
    started: float = field(default_factory=time.perf_counter)
    duration: Optional[float] = None

    def finish(self) -> 'RunManifest':
        self.duration = time.perf_counter() - self.started
        return self

    def to_dict(self) -> dict:
        data = asdict(self)
        data.pop('started')
        if data['duration'] is None:
            data['duration'] = time.perf_counter() - self.started
        return data
