"""Homogeneous rigid-transform algebra and the DH-row-to-matrix mapping.

Conventions used across the whole package:

* angles are radians, lengths are centimeters
* a :class:`RigidTransform` maps points from its child frame into its
  parent frame: ``p_parent = R @ p_child + t``
* DH row angles are normalized to (-pi, pi] at construction so that
  equality comparisons in tests are canonical
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError

TWO_PI = 2.0 * math.pi

# orthonormality / determinant tolerance for a valid rotation
ROTATION_TOL = 1e-9


def wrap_angle(x: float) -> float:
    """Wrap an angle to the canonical interval (-pi, pi]."""
    r = math.remainder(float(x), TWO_PI)
    return r if r > -math.pi else r + TWO_PI


@dataclass(frozen=True)
class DHRow:
    """One row of a DH table.

    theta: joint rotation about the prior z axis, offsets already applied
    alpha: twist about the new x axis
    r:     link offset along x (cm)
    d:     link offset along z (cm)
    """

    theta: float
    alpha: float
    r: float
    d: float

    def __post_init__(self):
        for name in ("theta", "alpha", "r", "d"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise InvalidParameterError(f"DH row field {name!r} must be finite, got {v!r}")
        object.__setattr__(self, "theta", wrap_angle(self.theta))
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "d", float(self.d))


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RigidTransform:
    """A rotation plus translation; the universal frame-change currency.

    The rotation must be orthonormal with determinant +1 (checked to 1e-9).
    Instances are immutable and safe to share between threads.
    """

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.rotation, dtype=float)
        t = np.asarray(self.translation, dtype=float).reshape(-1)
        if R.shape != (3, 3):
            raise InvalidParameterError(f"rotation must be 3x3, got shape {R.shape}")
        if t.shape != (3,):
            raise InvalidParameterError(f"translation must be a 3-vector, got shape {t.shape}")
        if not np.all(np.isfinite(R)) or not np.all(np.isfinite(t)):
            raise InvalidParameterError("transform entries must be finite")
        if np.abs(R.T @ R - np.eye(3)).max() > ROTATION_TOL:
            raise InvalidParameterError("rotation is not orthonormal within 1e-9")
        if abs(np.linalg.det(R) - 1.0) > ROTATION_TOL:
            raise InvalidParameterError("rotation determinant is not +1 within 1e-9")
        object.__setattr__(self, "rotation", _freeze(R))
        object.__setattr__(self, "translation", _freeze(t))

    @staticmethod
    def identity() -> "RigidTransform":
        return RigidTransform(np.eye(3), np.zeros(3))

    @staticmethod
    def from_matrix(m: np.ndarray) -> "RigidTransform":
        m = np.asarray(m, dtype=float)
        if m.shape != (4, 4):
            raise InvalidParameterError(f"expected a 4x4 matrix, got shape {m.shape}")
        return RigidTransform(m[:3, :3], m[:3, 3])

    def matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    def __matmul__(self, other: "RigidTransform") -> "RigidTransform":
        if not isinstance(other, RigidTransform):
            return NotImplemented
        return RigidTransform(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )


def dh_row_to_transform(row: DHRow) -> RigidTransform:
    """Map one DH row to its link transform.

    The matrix layout is fixed entry-wise (rotation about z by theta, then
    translation d along z and r along x, then twist alpha about x):

        [cos t, -sin t cos a,  sin t sin a, r cos t]
        [sin t,  cos t cos a, -cos t sin a, r sin t]
        [0,      sin a,        cos a,       d      ]
    """
    ct, st = math.cos(row.theta), math.sin(row.theta)
    ca, sa = math.cos(row.alpha), math.sin(row.alpha)
    rotation = np.array([
        [ct, -st * ca, st * sa],
        [st, ct * ca, -ct * sa],
        [0.0, sa, ca],
    ])
    translation = np.array([row.r * ct, row.r * st, row.d])
    return RigidTransform(rotation, translation)


def compose(sequence: Iterable[RigidTransform]) -> RigidTransform:
    """Left-to-right product of transforms; the empty product is identity."""
    out = RigidTransform.identity()
    for t in sequence:
        out = out @ t
    return out


def invert(T: RigidTransform) -> RigidTransform:
    """Inverse transform, computed as (R^T, -R^T t)."""
    rt = T.rotation.T
    return RigidTransform(rt, -(rt @ T.translation))


def apply(T: RigidTransform, p: Sequence[float]) -> np.ndarray:
    """Apply the transform to a point: R @ p + t."""
    p = np.asarray(p, dtype=float).reshape(3)
    return T.rotation @ p + T.translation
