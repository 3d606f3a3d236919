"""Vehicle-to-path association by nearest path point within ``d_path``."""

from dataclasses import dataclass

__all__ = ["DEFAULT_D_PATH", "AssociationSet", "PathAssociation", "associate"]

DEFAULT_D_PATH = 15.0


@dataclass(frozen=True)
class PathAssociation:
    path_id: str
    index: int
    distance: float


@dataclass(frozen=True)
class AssociationSet:
    frame: int
    vehicle: int
    entries: tuple = ()

    def path_ids(self):
        return {e.path_id for e in self.entries}

    def index_of(self, path_id):
        for e in self.entries:
            if e.path_id == path_id:
                return e.index
        raise KeyError(path_id)


def associate(trees, c, d_path=DEFAULT_D_PATH):
    """Return the paths whose nearest point lies within `d_path` of centroid `c`.

    `trees` maps path id to anything with a ``nearest(q) -> (index, distance)``
    method (a :class:`~pathtwin.kdtree.KdTree`, or a path map's ``index``).
    Entries are ordered by path id. An empty tuple means the vehicle is off
    every known path.
    """
    out = []
    for path_id in sorted(trees):
        index, dist = trees[path_id].nearest(c)
        if dist <= d_path:
            out.append(PathAssociation(path_id, index, dist))
    return tuple(out)
