"""
Grafos simples sobre los vértices 1..n: ciclos, bipartitos completos y grafos arbitrarios
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import networkx as nx

from .errors import GraphValidationError, InvalidFamilyError, ParseError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Grafo simple no dirigido; las aristas se guardan como (u, v) con u < v"""
    vertex_count: int
    edges: FrozenSet[Edge]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphValidationError(f"número de vértices inválido: {self.vertex_count}")
        for u, v in self.edges:
            if not (1 <= u < v <= self.vertex_count):
                raise GraphValidationError(f"arista no normalizada o fuera de rango: {(u, v)}", (u, v))

    @property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> List[int]:
        return sorted(w for edge in self.edges if v in edge for w in edge if w != v)

    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        graph = self.to_networkx()
        return {v: frozenset(graph.adj[v]) for v in graph.nodes}

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.vertex_count + 1))
        graph.add_edges_from(self.sorted_edges)
        return graph

    def describe(self) -> str:
        label = self.name or "G"
        return f"{label} (n={self.vertex_count}, |E|={len(self.edges)})"


def _from_networkx(graph: nx.Graph, name: str) -> Graph:
    """Etiqueta 1..n respetando el orden de los nodos de networkx"""
    mapping = {node: k for k, node in enumerate(graph.nodes, start=1)}
    edges = frozenset(
        (min(mapping[a], mapping[b]), max(mapping[a], mapping[b])) for a, b in graph.edges
    )
    return Graph(graph.number_of_nodes(), edges, name)


def make_cycle(n: int) -> Graph:
    """C_n con aristas {1,2},{2,3},...,{n-1,n},{1,n}"""
    if n < 3:
        raise InvalidFamilyError(f"un ciclo necesita n >= 3 (recibido {n})")
    return _from_networkx(nx.cycle_graph(n), f"C_{n}")


def make_complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} sobre {1..m} ∪ {m+1..m+n}, con m >= n >= 1"""
    if n < 1 or m < n:
        raise InvalidFamilyError(f"K_{{m,n}} requiere m >= n >= 1 (recibido m={m}, n={n})")
    return _from_networkx(nx.complete_bipartite_graph(m, n), f"K_{{{m},{n}}}")


def make_complete_graph(n: int) -> Graph:
    if n < 2:
        raise InvalidFamilyError(f"el grafo completo necesita n >= 2 (recibido {n})")
    return _from_networkx(nx.complete_graph(n), f"K_{n}")


def make_graph(n: int, edge_list: Iterable[Sequence[int]], name: str = "") -> Graph:
    """Valida y construye un grafo; rechaza lazos, duplicados y vértices fuera de rango"""
    if n < 1:
        raise GraphValidationError(f"número de vértices inválido: {n}")
    seen = set()
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphValidationError(f"una arista necesita dos extremos: {tuple(pair)}")
        u, v = int(pair[0]), int(pair[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphValidationError(f"vértice fuera de 1..{n} en la arista {(u, v)}", (u, v))
        if u == v:
            raise GraphValidationError(f"lazo en el vértice {u}", (u, v))
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise GraphValidationError(f"arista duplicada {edge}", edge)
        seen.add(edge)
    return Graph(n, frozenset(seen), name)


# Ejemplo de 9 vértices con dos esquinas: camino 1..7,
# centro 8 unido a 2,3,5,6 y vértice colgante 9.
TWO_CORNER_EDGES: Tuple[Edge, ...] = (
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
    (2, 8), (3, 8), (5, 8), (6, 8), (8, 9),
)


def make_two_corner_graph() -> Graph:
    return make_graph(9, TWO_CORNER_EDGES, "two-corner")


def parse_graph_text(text: str, name: str = "") -> Graph:
    """Formato: primera línea `n`, luego `u v` por línea; `#` inicia comentario"""
    n = None
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"se esperaban enteros: {raw!r}", lineno) from None
        if n is None:
            if len(values) != 1:
                raise ParseError("la primera línea debe contener solo n", lineno)
            n = values[0]
            continue
        if len(values) != 2:
            raise ParseError(f"se esperaba `u v`: {raw!r}", lineno)
        edges.append((values[0], values[1]))
    if n is None:
        raise ParseError("archivo de grafo vacío")
    return make_graph(n, edges, name)


def read_graph_file(path: Union[str, Path]) -> Graph:
    path = Path(path)
    return parse_graph_text(path.read_text(encoding="utf-8"), path.stem)


def format_graph_text(graph: Graph) -> str:
    lines = [str(graph.vertex_count)]
    lines.extend(f"{u} {v}" for u, v in graph.sorted_edges)
    return "\n".join(lines) + "\n"
