"""Hopcroft-Karp maximum bipartite matching with a Hall-violator extractor.

The graph is a dict from left vertices to lists of right vertices. Plain
dicts and lists are used throughout so results are identical across runs.
"""

from collections import deque
from typing import Deque, Dict, Generic, Hashable, List, Set, Tuple, TypeVar

THLeft = TypeVar('THLeft', bound=Hashable)
THRight = TypeVar('THRight', bound=Hashable)

FAKE_INFINITY = -1


class HopcroftKarp(Generic[THLeft, THRight]):
    """Maximum matching on a bipartite graph given by left adjacency lists."""

    def __init__(self, graph_left: Dict[THLeft, List[THRight]]):
        self._graph_left: Dict[THLeft, List[THRight]] = graph_left
        self._reference_distance: int = FAKE_INFINITY
        self._pair_left: Dict[THLeft, THRight] = {}
        self._pair_right: Dict[THRight, THLeft] = {}
        self._left: List[THLeft] = list(self._graph_left.keys())
        self._dist_left: Dict[THLeft, int] = {}
        self._size = None

    def _run_hopcroft_karp(self) -> int:
        self._pair_left.clear()
        self._pair_right.clear()
        self._dist_left.clear()
        for left in self._left:
            self._dist_left[left] = FAKE_INFINITY
        matchings = 0
        while self._bfs_hopcroft_karp():
            for left in self._left:
                if left in self._pair_left:
                    continue
                if self._dfs_hopcroft_karp(left):
                    matchings += 1
        return matchings

    def get_maximum_matching_num(self) -> Tuple[int, Dict[THLeft, THRight]]:
        """Cardinality and one maximum matching (left -> right)."""
        if self._size is None:
            self._size = self._run_hopcroft_karp()
        return self._size, self._pair_left

    def get_maximum_matching(self) -> Dict[THLeft, THRight]:
        return self.get_maximum_matching_num()[1]

    def is_left_perfect(self) -> bool:
        return self.get_maximum_matching_num()[0] == len(self._left)

    def hall_violator(self) -> Tuple[List[THLeft], List[THRight]]:
        """A left set V with |N(V)| < |V|, or two empty lists when the matching is left-perfect.

        V is every left vertex reachable by alternating paths from the
        unmatched left vertices; N(V) is then fully matched into V.
        """
        self.get_maximum_matching_num()
        start = [left for left in self._left if left not in self._pair_left]
        if not start:
            return [], []
        seen_left: Set[THLeft] = set(start)
        seen_right: Dict[THRight, None] = {}
        order: List[THLeft] = list(start)
        queue: Deque[THLeft] = deque(start)
        while queue:
            left = queue.popleft()
            for right in self._graph_left[left]:
                if right in seen_right:
                    continue
                seen_right[right] = None
                partner = self._pair_right.get(right)
                if partner is not None and partner not in seen_left:
                    seen_left.add(partner)
                    order.append(partner)
                    queue.append(partner)
        return order, list(seen_right)

    def _bfs_hopcroft_karp(self) -> bool:
        vertex_queue: Deque[THLeft] = deque([])
        for left_vert in self._left:
            if left_vert not in self._pair_left:
                vertex_queue.append(left_vert)
                self._dist_left[left_vert] = 0
            else:
                self._dist_left[left_vert] = FAKE_INFINITY
        self._reference_distance = FAKE_INFINITY
        while vertex_queue:
            left_vertex = vertex_queue.popleft()
            if self._dist_left[left_vertex] == self._reference_distance == FAKE_INFINITY:
                continue
            if self._dist_left[left_vertex] >= self._reference_distance != FAKE_INFINITY:
                continue
            for right_vertex in self._graph_left[left_vertex]:
                if right_vertex not in self._pair_right:
                    if self._reference_distance == FAKE_INFINITY:
                        self._reference_distance = self._dist_left[left_vertex] + 1
                else:
                    other_left = self._pair_right[right_vertex]
                    if self._dist_left[other_left] == FAKE_INFINITY:
                        self._dist_left[other_left] = self._dist_left[left_vertex] + 1
                        vertex_queue.append(other_left)
        return self._reference_distance != FAKE_INFINITY

    def _swap_lr(self, left: THLeft, right: THRight) -> None:
        self._pair_left[left] = right
        self._pair_right[right] = left

    def _dfs_hopcroft_karp(self, left: THLeft) -> bool:
        for right in self._graph_left[left]:
            if right not in self._pair_right:
                if self._reference_distance == self._dist_left[left] + 1:
                    self._swap_lr(left, right)
                    return True
            else:
                other_left = self._pair_right[right]
                if self._dist_left[other_left] == self._dist_left[left] + 1:
                    if self._dfs_hopcroft_karp(other_left):
                        self._swap_lr(left, right)
                        return True
        self._dist_left[left] = FAKE_INFINITY
        return False
