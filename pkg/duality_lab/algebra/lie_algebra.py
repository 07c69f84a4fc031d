from enum import Enum
from typing import Dict, Mapping, Sequence, Tuple

from duality_lab.common.errors import UnknownStarError

A = 'a'
A_DAG = 'a_dag'
Z = 'Z'
H = 'H'
E = 'E'
F = 'F'

LinearForm = Mapping[str, object]


class AlgebraName(str, Enum):
    Heisenberg = "heisenberg"
    Sl2 = "sl2"


class StarName(str, Enum):
    Heisenberg = "heisenberg"
    Su11 = "su11"
    # the star structure of i sl(2, R), every generator negated
    Isl2R = "isl2r"


class LieAlgebraSpec:
    """
    Lie algebra given by an ordered generator list and a bracket table
    Brackets and star images are linear forms in the generators
    """

    def __init__(self,
                 name: AlgebraName,
                 generators: Sequence[str],
                 brackets: Mapping[Tuple[str, str], LinearForm],
                 star_tables: Mapping[StarName, Mapping[str, LinearForm]]):
        self.__name = name
        self.__generators = tuple(generators)
        self.__order = {g: i for i, g in enumerate(self.__generators)}
        self.__brackets: Dict[Tuple[str, str], Dict[str, object]] = {}
        for (x, y), form in brackets.items():
            self.__brackets[(x, y)] = dict(form)
            self.__brackets[(y, x)] = {g: -c for g, c in form.items()}
        self.__star_tables = {s: {g: dict(form) for g, form in table.items()} for s, table in star_tables.items()}

    @property
    def name(self) -> AlgebraName:
        return self.__name

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.__generators

    @property
    def stars(self) -> Tuple[StarName, ...]:
        return tuple(self.__star_tables.keys())

    def order(self, generator: str) -> int:
        return self.__order[generator]

    def has_generator(self, generator: str) -> bool:
        return generator in self.__order

    def bracket(self, x: str, y: str) -> Dict[str, object]:
        return self.__brackets.get((x, y), {})

    def star_image(self, star: StarName, generator: str) -> Dict[str, object]:
        if star not in self.__star_tables:
            raise UnknownStarError(f"Star structure not defined for algebra [star: {star}, algebra: {self.__name}]")
        return self.__star_tables[star][generator]

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebraSpec) and other.name == self.__name

    def __hash__(self) -> int:
        return hash(self.__name)

    def __repr__(self) -> str:
        return f"LieAlgebraSpec({self.__name.value})"


HEISENBERG = LieAlgebraSpec(
    AlgebraName.Heisenberg,
    (A, A_DAG, Z),
    {
        (A_DAG, A): {Z: 1},
    },
    {
        StarName.Heisenberg: {A: {A_DAG: 1}, A_DAG: {A: 1}, Z: {Z: 1}},
    })

SL2 = LieAlgebraSpec(
    AlgebraName.Sl2,
    (H, E, F),
    {
        (H, E): {E: 2},
        (H, F): {F: -2},
        (E, F): {H: 1},
    },
    {
        StarName.Su11: {H: {H: 1}, E: {F: -1}, F: {E: -1}},
        StarName.Isl2R: {H: {H: -1}, E: {E: -1}, F: {F: -1}},
    })

ALGEBRAS = {
    AlgebraName.Heisenberg: HEISENBERG,
    AlgebraName.Sl2: SL2,
}


def algebra_of(name: AlgebraName) -> LieAlgebraSpec:
    return ALGEBRAS[AlgebraName(name)]
