"""Depth-camera back-projection into the neck-base frame.

A pixel p = (u, v) with depth D is lifted to the camera-frame point
D * K^-1 * (u, v, 1)^T and then pushed through the head FK transform,
which maps camera-frame points into the neck-base frame. Depth is measured
along the camera optical axis (the camera-frame z), not along the ray.

Optical-axis convention: the camera z axis coincides with the final head
DH frame's z axis. At zero pan/tilt that axis points along -y of the
neck-base frame, which is what makes the worked example
(pixel (0,0), depth 100, identity K) land at (3.4, -100, 5).

Invalid depth is encoded as 0 (the sensor's no-return marker); every
consumer checks for it. Object detection itself is out of scope: callers
supply Detection records from whatever detector they run, and tests use
hand-authored or synthetically rendered ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .chain import BodyGeometry, JointVector, head_fk
from .errors import (
    BehindCameraError,
    DegenerateQuadError,
    InvalidCameraError,
    InvalidParameterError,
    NoDepthError,
)
from .transforms import RigidTransform, apply, invert

INVALID_DEPTH = 0.0

# minimum camera-frame depth for a projectable point
MIN_PROJECT_DEPTH = 1e-12


@dataclass(frozen=True)
class CameraModel:
    """Pinhole intrinsics plus the head joint state fixing the extrinsic."""

    K: np.ndarray
    head_joints: JointVector
    geometry: BodyGeometry

    def __post_init__(self):
        K = np.asarray(self.K, dtype=float)
        if K.shape != (3, 3):
            raise InvalidCameraError(f"intrinsic matrix must be 3x3, got {K.shape}")
        if not np.all(np.isfinite(K)):
            raise InvalidCameraError("intrinsic matrix must be finite")
        if np.abs(np.tril(K, -1)).max() > 0:
            raise InvalidCameraError("intrinsic matrix must be upper-triangular")
        if np.any(np.diag(K) <= 0):
            raise InvalidCameraError("intrinsic diagonal must be positive")
        if self.head_joints.kind != "head":
            raise InvalidCameraError("camera model needs head joints")
        Kf = K.copy()
        Kf.setflags(write=False)
        object.__setattr__(self, "K", Kf)

    @property
    def camera_to_neck(self) -> RigidTransform:
        """Transform mapping camera-frame points into the neck-base frame."""
        return head_fk(self.geometry, self.head_joints).transform


@dataclass(frozen=True)
class DepthImage:
    """Row-major depth grid in cm; 0 marks pixels with no depth return."""

    width: int
    height: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.height, self.width):
            raise InvalidParameterError(
                f"depth values must be {self.height}x{self.width}, got {v.shape}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise InvalidParameterError("depth values must be finite and >= 0")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def at(self, u: float, v: float) -> float:
        """Depth at the nearest integer pixel; out-of-bounds reads as invalid."""
        col, row = int(round(u)), int(round(v))
        if not (0 <= col < self.width and 0 <= row < self.height):
            return INVALID_DEPTH
        return float(self.values[row, col])

    @staticmethod
    def from_text(text: str) -> "DepthImage":
        """Parse the fixture format: header "width height", then row-major values."""
        tokens = text.split()
        if len(tokens) < 2:
            raise InvalidParameterError("depth text needs a 'width height' header")
        w, h = int(tokens[0]), int(tokens[1])
        vals = [float(t) for t in tokens[2:]]
        if len(vals) != w * h:
            raise InvalidParameterError(f"expected {w * h} depth values, got {len(vals)}")
        return DepthImage(w, h, np.array(vals).reshape(h, w))

    def to_text(self) -> str:
        lines = [f"{self.width} {self.height}"]
        for row in self.values:
            lines.append(" ".join(f"{x:g}" for x in row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Detection:
    """One detector output: class label, pixel bbox and confidence."""

    class_label: str
    bbox: Tuple[float, float, float, float]
    confidence: float

    def __post_init__(self):
        u0, v0, u1, v1 = self.bbox
        if not (u1 > u0 and v1 > v0):
            raise InvalidParameterError(f"degenerate bbox {self.bbox!r}")
        if not (0.0 <= self.confidence <= 1.0):
            raise InvalidParameterError(f"confidence out of range: {self.confidence!r}")

    @property
    def centroid(self) -> Tuple[float, float]:
        u0, v0, u1, v1 = self.bbox
        return ((u0 + u1) / 2.0, (v0 + v1) / 2.0)


@dataclass(frozen=True)
class LocalizedDetection:
    """A detection lifted to 3D; point is None when the centroid had no depth."""

    class_label: str
    point: Optional[np.ndarray]


def back_project(cam: CameraModel, pixel: Sequence[float], depth: float) -> np.ndarray:
    """Lift a pixel with known depth to a neck-base-frame point."""
    u, v = float(pixel[0]), float(pixel[1])
    if not (math.isfinite(u) and math.isfinite(v)):
        raise InvalidParameterError("pixel coordinates must be finite")
    if not (math.isfinite(depth) and depth > 0):
        raise NoDepthError(f"no usable depth at pixel ({u:g}, {v:g})")
    try:
        k_inv = np.linalg.inv(cam.K)
    except np.linalg.LinAlgError:
        raise InvalidCameraError("intrinsic matrix is singular")
    ray = k_inv @ np.array([u, v, 1.0])
    p_cam = depth * ray
    return apply(cam.camera_to_neck, p_cam)


def project(cam: CameraModel, point: Sequence[float]) -> Tuple[Tuple[float, float], float]:
    """Inverse of back_project: neck-frame point to (pixel, depth)."""
    p = np.asarray(point, dtype=float).reshape(3)
    p_cam = apply(invert(cam.camera_to_neck), p)
    depth = float(p_cam[2])
    if depth <= MIN_PROJECT_DEPTH:
        raise BehindCameraError(f"point has non-positive camera depth {depth:g}")
    uvw = cam.K @ (p_cam / depth)
    return (float(uvw[0]), float(uvw[1])), depth


def strip_dimensions(cam: CameraModel, corner_pixels: Sequence[Sequence[float]],
                     depth: DepthImage) -> Tuple[float, float]:
    """Recover (width, height) of a rectangular strip from its corner pixels.

    Corners are ordered around the quad so consecutive pairs are edges:
    width is the mean of edges 0-1 and 3-2, height the mean of 0-3 and 1-2.
    """
    if len(corner_pixels) != 4:
        raise InvalidParameterError("strip needs exactly four corner pixels")
    pts = []
    for px in corner_pixels:
        d = depth.at(px[0], px[1])
        if d <= INVALID_DEPTH:
            raise NoDepthError(f"no depth at corner pixel ({px[0]:g}, {px[1]:g})")
        pts.append(back_project(cam, px, d))
    p = np.stack(pts)
    # degenerate when all four 3D corners fall on one line
    edges = p[1:] - p[0]
    cross = np.cross(edges[0], edges[1]), np.cross(edges[0], edges[2])
    if max(np.linalg.norm(c) for c in cross) < 1e-9:
        raise DegenerateQuadError("strip corners are collinear")
    width = (np.linalg.norm(p[1] - p[0]) + np.linalg.norm(p[2] - p[3])) / 2.0
    height = (np.linalg.norm(p[3] - p[0]) + np.linalg.norm(p[2] - p[1])) / 2.0
    return float(width), float(height)


def localize_detections(cam: CameraModel, detections: Sequence[Detection],
                        depth: DepthImage) -> List[LocalizedDetection]:
    """Back-project each detection's bbox centroid; items without depth get
    a None point instead of failing the batch."""
    out = []
    for det in detections:
        u, v = det.centroid
        d = depth.at(u, v)
        if d <= INVALID_DEPTH:
            out.append(LocalizedDetection(det.class_label, None))
        else:
            out.append(LocalizedDetection(det.class_label, back_project(cam, (u, v), d)))
    return out


def render_strip_scene(cam: CameraModel, corners: Sequence[Sequence[float]],
                       width: int = 320, height: int = 240,
                       noise_sigma: float = 0.0,
                       rng: Optional[np.random.Generator] = None
                       ) -> Tuple[DepthImage, List[Tuple[float, float]]]:
    """Render a synthetic scene: project 3D corners and write their depths
    into an otherwise-empty depth image at the nearest pixel.

    Returns the image and the exact (fractional) corner pixels. Gaussian
    depth noise of noise_sigma cm is added per corner when requested.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    grid = np.zeros((height, width))
    pixels = []
    for c in corners:
        (u, v), d = project(cam, c)
        if noise_sigma > 0.0:
            d = max(d + float(rng.normal(0.0, noise_sigma)), 1e-6)
        col, row = int(round(u)), int(round(v))
        if not (0 <= col < width and 0 <= row < height):
            raise InvalidParameterError(
                f"corner projects outside the {width}x{height} image at ({u:.1f}, {v:.1f})")
        grid[row, col] = d
        pixels.append((u, v))
    return DepthImage(width, height, grid), pixels
