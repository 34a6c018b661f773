from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from application.config.config import Config
from application.data.character_tables import ICOSA_ALPHA, ICOSA_BETA
from application.exception.application_error import (
    ApplicationError,
    GeometryError,
    InvalidArgumentError,
)
from application.model.configuration import (
    HYBRID,
    Configuration,
    ConfigurationKey,
    Edge,
    EdgeKind,
    ExtremaClass,
    Plaquette,
)
from application.model.group import GroupLabel
from application.service.group_rep_service import GroupRepService
from application.utils.logger import log

FOUR_PI = 4 * np.pi

SUPPORTED = {
    GroupLabel.D2: ("2", "1"),
    GroupLabel.D4: ("4", "2", "1"),
    GroupLabel.D6: ("6", "2", "1"),
    GroupLabel.O: ("4", "3", "2", "1", HYBRID),
    GroupLabel.Y: ("5", "3", "2", "1"),
}

GROUP_ORDER = {
    GroupLabel.D2: 4,
    GroupLabel.D4: 8,
    GroupLabel.D6: 12,
    GroupLabel.O: 24,
    GroupLabel.Y: 60,
}

# Number of congruent plaquettes in one cover; sets the period s/2 of the spectra.
S_PARAMETER = {
    (GroupLabel.O, "4"): 8,
    (GroupLabel.O, "3"): 6,
    (GroupLabel.O, HYBRID): 12,
    (GroupLabel.Y, "5"): 20,
    (GroupLabel.Y, "3"): 12,
}

OCTAHEDRON = [
    (0.0, 0.0, 1.0),
    (0.0, 0.0, -1.0),
    (1.0, 0.0, 0.0),
    (-1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, -1.0, 0.0),
]

GENERIC_SEED = (0.3, 0.5, 0.8)


def _normalize(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    return a / np.linalg.norm(a)


def _vertex_key(v: np.ndarray) -> Tuple[float, float]:
    azimuth = np.arctan2(v[1], v[0]) % (2 * np.pi)
    if abs(azimuth - 2 * np.pi) < 1e-9:
        azimuth = 0.0
    return (round(-v[2], 9), round(azimuth, 9))


class GeometryService:
    def __init__(self):
        self.vertex_tol = Config.VERTEX_TOL
        self.total_tol = 1e-10
        self.group_rep_service = GroupRepService()

    # Vertices

    def _seed(self, group: GroupLabel, p: str) -> List[np.ndarray]:
        if p == "1":
            return [_normalize(GENERIC_SEED)]
        if group in (GroupLabel.D2, GroupLabel.D4, GroupLabel.D6):
            if p == "2" and group != GroupLabel.D2:
                return [np.array([1.0, 0.0, 0.0])]
            # D2 keeps its single axis along x, matching the B3 labelling
            axis = np.array([1.0, 0.0, 0.0]) if group == GroupLabel.D2 else np.array([0.0, 0.0, 1.0])
            return [axis]
        a, b = ICOSA_ALPHA, ICOSA_BETA
        seeds = {
            (GroupLabel.O, "3"): [_normalize((1, 1, 1))],
            (GroupLabel.O, "2"): [_normalize((1, 1, 0))],
            (GroupLabel.O, HYBRID): [_normalize((1, 1, 1))],
            (GroupLabel.Y, "5"): [np.array([a, b, 0.0])],
            (GroupLabel.Y, "3"): [_normalize((2 * a + b, 0.0, a))],
            (GroupLabel.Y, "2"): [np.array([1.0, 0.0, 0.0])],
        }
        return seeds[(group, p)]

    def _orbit(self, group: GroupLabel, seeds: Sequence[np.ndarray]) -> List[np.ndarray]:
        rotations = self.group_rep_service.proper_rotations(group)
        points: List[np.ndarray] = []
        for seed in seeds:
            for rotation in rotations:
                image = rotation @ seed
                if not any(np.linalg.norm(image - q) < self.vertex_tol for q in points):
                    points.append(image)
        return sorted(points, key=_vertex_key)

    def _vertices(self, group: GroupLabel, p: str) -> List[np.ndarray]:
        if group == GroupLabel.O and p == "4":
            return [np.array(v) for v in OCTAHEDRON]
        if group == GroupLabel.O and p == HYBRID:
            cube = self._orbit(group, self._seed(group, p))
            return [np.array(v) for v in OCTAHEDRON] + cube
        return self._orbit(group, self._seed(group, p))

    # Edges and faces

    def _edges_by_shell(self, vertices: np.ndarray, shells: int) -> List[List[Tuple[int, int]]]:
        gram = vertices @ vertices.T
        n = len(vertices)
        dots = sorted(
            {round(gram[i, j], 9) for i in range(n) for j in range(i + 1, n)}, reverse=True
        )
        result = []
        for level in dots[:shells]:
            result.append(
                [
                    (i, j)
                    for i in range(n)
                    for j in range(i + 1, n)
                    if abs(gram[i, j] - level) < self.vertex_tol
                ]
            )
        return result

    @staticmethod
    def _ccw_neighbours(vertices: np.ndarray, pairs: Sequence[Tuple[int, int]]) -> Dict[int, List[int]]:
        """Neighbours of every vertex sorted counterclockwise as seen from outside."""
        adjacency: Dict[int, List[int]] = {i: [] for i in range(len(vertices))}
        for i, j in pairs:
            adjacency[i].append(j)
            adjacency[j].append(i)
        ordered = {}
        for v, neighbours in adjacency.items():
            if not neighbours:
                ordered[v] = []
                continue
            normal = vertices[v]
            first = vertices[neighbours[0]]
            e1 = _normalize(first - np.dot(first, normal) * normal)
            e2 = np.cross(normal, e1)

            def angle(k, normal=normal, e1=e1, e2=e2):
                t = vertices[k] - np.dot(vertices[k], normal) * normal
                return np.arctan2(np.dot(t, e2), np.dot(t, e1)) % (2 * np.pi)

            ordered[v] = sorted(neighbours, key=angle)
        return ordered

    def _faces(self, vertices: np.ndarray, pairs: Sequence[Tuple[int, int]]) -> List[List[int]]:
        neighbours = self._ccw_neighbours(vertices, pairs)
        directed = [(i, j) for i, j in pairs] + [(j, i) for i, j in pairs]
        visited = set()
        faces = []
        for start in directed:
            if start in visited:
                continue
            face = []
            u, v = start
            while (u, v) not in visited:
                visited.add((u, v))
                face.append(u)
                around = neighbours[v]
                w = around[(around.index(u) - 1) % len(around)]
                u, v = v, w
            faces.append(face)
        return faces

    def solid_angle(self, cycle: Sequence[Sequence[float]]) -> float:
        """Oriented solid angle of a spherical polygon via the spherical excess.

        Counterclockwise polygons (seen from outside) are positive.

        Raises:
            GeometryError: fewer than three vertices, or coincident/antipodal
                consecutive vertices.
        """
        points = [_normalize(v) for v in cycle]
        n = len(points)
        if n < 3:
            raise GeometryError(
                payload={"error": "Degenerate Polygon", "message": "A polygon needs at least three vertices"}
            )
        total = 0.0
        for k in range(n):
            a, b, c = points[k - 1], points[k], points[(k + 1) % n]
            if abs(np.dot(a, b)) > 1 - 1e-12:
                raise GeometryError(
                    payload={
                        "error": "Degenerate Polygon",
                        "message": "Consecutive vertices are coincident or antipodal",
                    }
                )
            d_next = c - np.dot(c, b) * b
            d_prev = a - np.dot(a, b) * b
            interior = np.arctan2(np.dot(b, np.cross(d_next, d_prev)), np.dot(d_next, d_prev))
            total += interior % (2 * np.pi)
        omega = total - (n - 2) * np.pi
        if omega > 2 * np.pi + 1e-9:
            omega -= FOUR_PI
        return float(omega)

    # Configurations

    def _validate(self, group: GroupLabel, p: str, alpha: Optional[float], multipath: bool) -> None:
        if p not in SUPPORTED.get(group, ()):
            raise InvalidArgumentError(
                payload={
                    "error": "Unsupported Configuration",
                    "message": f"C({group.value},{p}) is not a supported configuration",
                }
            )
        if multipath and (group, p) != (GroupLabel.O, "3"):
            raise InvalidArgumentError(
                payload={
                    "error": "Unsupported Configuration",
                    "message": "The multipath regime is only modelled for C(O,3)",
                }
            )
        if (group, p) == (GroupLabel.O, "2"):
            if alpha is None or not 0 < alpha < 2 * np.pi / 3:
                raise InvalidArgumentError(
                    payload={"error": "Invalid Alpha", "message": "C(O,2) needs 0 < alpha < 2pi/3"}
                )
        elif (group, p) == (GroupLabel.Y, "2"):
            if alpha is None or not 0 <= alpha < np.pi / 3:
                raise InvalidArgumentError(
                    payload={"error": "Invalid Alpha", "message": "C(Y,2) needs 0 <= alpha < pi/3"}
                )

    def _face_angle(self, key: ConfigurationKey, face: List[int], vertices: np.ndarray, alpha) -> float:
        group, p = key.group, key.p
        if group != GroupLabel.O and group != GroupLabel.Y:
            return 2 * np.pi
        if (group, p) == (GroupLabel.O, "2"):
            return alpha if len(face) == 4 else np.pi / 2 - 3 * alpha / 4
        if (group, p) == (GroupLabel.Y, "2"):
            return alpha if len(face) == 5 else np.pi / 5 - 3 * alpha / 5
        return self.solid_angle(vertices[face])

    def make_configuration(
        self,
        group: GroupLabel,
        p,
        alpha: Optional[float] = None,
        multipath: bool = False,
    ) -> Configuration:
        """Build C(G, p): vertices, tunnelling edges and oriented plaquettes.

        Args:
            group: point group label.
            p: fold of the axes through the vertices ("4+3" for the hybrid).
            alpha: pentagon/square solid angle, required for C(O,2) and C(Y,2).
            multipath: add the face-diagonal paths of C(O,3).

        Returns:
            Configuration.

        Raises:
            InvalidArgumentError: unsupported (group, p) or alpha out of range.
            GeometryError: the construction failed its own consistency checks.
        """
        group = GroupLabel(group)
        p = str(p)
        self._validate(group, p, alpha, multipath)
        key = ConfigurationKey(group=group, p=p, multipath=multipath)
        try:
            vertices = np.array(self._vertices(group, p))
            expected = GROUP_ORDER[group] // int(p) if p != HYBRID else 14
            if len(vertices) != expected:
                raise GeometryError(
                    payload={
                        "error": "Vertex Count Mismatch",
                        "message": f"{key.label}: {len(vertices)} vertices, expected {expected}",
                    }
                )
            edges, plaquettes, s = self._connect(key, vertices, alpha)
            config = Configuration(
                group=group,
                p=p,
                label=key.label,
                n_sites=len(vertices),
                vertices=vertices,
                edges=edges,
                plaquettes=plaquettes,
                s_parameter=s,
                alpha=alpha if (p == "2" and group in (GroupLabel.O, GroupLabel.Y)) else None,
                multipath=multipath,
            )
            self._check_cover(config)
            log.debug(
                f"built {config.label}: N={config.n_sites}, {len(edges)} edges, "
                f"{len(plaquettes)} plaquettes"
            )
            return config
        except ApplicationError:
            raise
        except Exception as e:
            log.error(f"Error building C({group.value},{p}): {e}", exc_info=True)
            raise GeometryError(
                payload={"error": "Configuration Failed", "message": str(e)}
            ) from e

    def from_key(self, text: str, alpha: Optional[float] = None) -> Configuration:
        try:
            key = ConfigurationKey.parse(text)
        except ValueError as e:
            raise InvalidArgumentError(
                payload={"error": "Unknown Configuration", "message": str(e)}
            ) from e
        return self.make_configuration(key.group, key.p, alpha=alpha, multipath=key.multipath)

    def _connect(self, key: ConfigurationKey, vertices: np.ndarray, alpha):
        group, p = key.group, key.p
        if p == "1":
            return [], [], None
        if group in (GroupLabel.D2, GroupLabel.D4, GroupLabel.D6) and p == group.value[1]:
            fold = int(p)
            edges = [Edge(i=0, j=1, path_multiplicity=fold)]
            plaquettes = [
                Plaquette(cycle=[0, 1], paths=[k, (k + 1) % fold], solid_angle=FOUR_PI / fold)
                for k in range(fold)
            ]
            return edges, plaquettes, fold

        shells = self._edges_by_shell(vertices, 2 if key.multipath else 1)
        nn = shells[0]
        edges = [Edge(i=i, j=j) for i, j in nn]
        faces = self._faces(vertices, nn)

        if key.multipath:
            edges += [Edge(i=i, j=j, kind=EdgeKind.NNN) for i, j in shells[1]]
            plaquettes = []
            for face in faces:
                for k in range(len(face)):
                    triangle = [face[k], face[(k + 1) % 4], face[(k + 2) % 4]]
                    plaquettes.append(
                        Plaquette(
                            cycle=triangle,
                            paths=[0, 0, 0],
                            solid_angle=self.solid_angle(vertices[triangle]),
                        )
                    )
            return edges, plaquettes, 12

        plaquettes = [
            Plaquette(
                cycle=face,
                paths=[0] * len(face),
                solid_angle=self._face_angle(key, face, vertices, alpha),
            )
            for face in faces
        ]
        s = S_PARAMETER.get((group, p))
        if group in (GroupLabel.D4, GroupLabel.D6) and p == "2":
            s = 2
        return edges, plaquettes, s

    def _check_cover(self, config: Configuration) -> None:
        if not config.plaquettes:
            return
        target = 2 * FOUR_PI if config.multipath else FOUR_PI
        if abs(config.total_solid_angle - target) > self.total_tol:
            raise GeometryError(
                payload={
                    "error": "Cover Mismatch",
                    "message": f"{config.label}: plaquettes cover {config.total_solid_angle:.12f} sr, expected {target:.12f}",
                }
            )

    def vertex_permutation_error(self, config: Configuration) -> float:
        """Largest distance between a rotated vertex and its nearest vertex."""
        vertices = config.vertex_array
        worst = 0.0
        for rotation in self.group_rep_service.proper_rotations(config.group):
            images = vertices @ rotation.T
            distances = np.linalg.norm(images[:, None, :] - vertices[None, :, :], axis=2)
            worst = max(worst, float(distances.min(axis=1).max()))
        return worst

    def classify_extrema(self, a: float, b: float) -> ExtremaClass:
        """Which of the 6-, 8- or 12-fold configurations holds the classical minima.

        Depths on the unit sphere: [100] -a-b, [111] -a/3-11b/9, [110] -a/2-b/4.
        """
        if a == 0 and b == 0:
            raise InvalidArgumentError(
                payload={"error": "Invalid Coefficients", "message": "(a, b) must not both vanish"}
            )
        depths = (-a - b, -a / 3 - 11 * b / 9, -a / 2 - b / 4)
        order = np.argsort(depths, kind="stable")
        scale = max(abs(a), abs(b))
        boundary = depths[order[1]] - depths[order[0]] <= 1e-12 * scale
        return ExtremaClass(
            n_minima=(6, 8, 12)[order[0]], boundary_flag=bool(boundary), depths=depths
        )

    def classify_phi(self, phi: float) -> ExtremaClass:
        return self.classify_extrema(np.cos(phi), np.sin(phi))
