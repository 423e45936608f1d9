"""Ground-truth fixtures: the published orbit counts this package must
reproduce, plus diff helpers.

The three fixtures are transcribed verbatim and never computed here:

* ``ORBIT_COUNTS``   -- independent-set orbits by (size, stabilizer order),
  sizes 1..24; grand total 314,248,344.
* ``MAXIMAL_COUNTS`` -- the same for maximal cuts, sizes 10..24.  Absent
  cells are genuine zero claims (e.g. there is no maximal cut of size 23),
  which is why the accessor reports explicit zeros for any (size, order)
  inside the declared column range.
* ``HIGH_SYMMETRY``  -- six selected cuts with their full analytics
  (stabilizer order, maximality, cell-graph connectivity, vertex orbit
  profiles with local types and point groups).
"""

from __future__ import annotations

from dataclasses import dataclass

GRAND_TOTAL = 314_248_344

STAB_COLUMNS = (
    1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20,
    24, 30, 32, 36, 40, 48, 72, 100, 120, 144, 192, 240, 576,
)

ORBIT_COUNTS: dict[int, dict[int, int]] = {
    1: {120: 1},
    2: {8: 1, 12: 2, 20: 3, 240: 1},
    3: {1: 1, 2: 21, 4: 6, 6: 3, 8: 1, 10: 1, 12: 2, 20: 3, 36: 1},
    4: {1: 187, 2: 184, 3: 2, 4: 40, 6: 7, 8: 6, 12: 3, 20: 2, 24: 3, 32: 1, 40: 1},
    5: {1: 3721, 2: 938, 3: 4, 4: 79, 6: 21, 8: 3, 10: 1, 12: 7, 20: 1, 100: 1},
    6: {1: 41551, 2: 3924, 3: 17, 4: 212, 6: 34, 8: 18, 10: 6, 12: 8, 24: 2,
        36: 1, 48: 1, 72: 1},
    7: {1: 321809, 2: 12093, 3: 53, 4: 322, 6: 63, 8: 4, 10: 19, 12: 12, 20: 4,
        24: 1},
    8: {1: 1792727, 2: 32714, 3: 102, 4: 672, 5: 1, 6: 102, 8: 40, 10: 28,
        12: 17, 16: 3, 24: 6, 48: 2, 192: 1},
    9: {1: 7284325, 2: 70006, 3: 170, 4: 815, 6: 137, 8: 6, 10: 14, 12: 19,
        18: 1, 20: 2, 24: 2, 36: 1},
    10: {1: 21539704, 2: 129924, 3: 282, 4: 1349, 5: 2, 6: 190, 8: 43, 10: 4,
         12: 16, 20: 3, 24: 8, 40: 1, 100: 1},
    11: {1: 45979736, 2: 194232, 3: 420, 4: 1346, 6: 251, 8: 6, 10: 11, 12: 15,
         20: 3},
    12: {1: 69895468, 2: 247136, 3: 505, 4: 1781, 6: 236, 8: 57, 9: 1, 10: 37,
         12: 21, 16: 4, 18: 1, 20: 12, 24: 5, 40: 1, 48: 2, 120: 1, 144: 1},
    13: {1: 74365276, 2: 252040, 3: 527, 4: 1457, 6: 266, 8: 6, 10: 58, 12: 20,
         20: 7, 120: 2},
    14: {1: 54266201, 2: 213377, 3: 553, 4: 1545, 6: 255, 8: 43, 10: 26, 12: 31,
         20: 9, 24: 7, 40: 1, 120: 1},
    15: {1: 26605433, 2: 142212, 3: 478, 4: 1041, 5: 2, 6: 181, 8: 4, 9: 1,
         10: 5, 12: 19, 18: 1, 20: 4, 24: 2, 30: 1},
    16: {1: 8612476, 2: 76249, 3: 316, 4: 837, 6: 165, 8: 39, 10: 5, 12: 14,
         16: 4, 24: 4, 48: 1, 192: 1},
    17: {1: 1824397, 2: 31465, 3: 216, 4: 461, 6: 116, 8: 4, 10: 16, 12: 6,
         20: 3, 24: 1},
    18: {1: 252764, 2: 10001, 3: 123, 4: 273, 6: 45, 8: 20, 10: 25, 12: 10,
         18: 1, 24: 4, 36: 1, 48: 1},
    19: {1: 22673, 2: 2360, 3: 49, 4: 120, 6: 39, 8: 3, 10: 12, 12: 8, 20: 1},
    20: {1: 1202, 2: 388, 3: 18, 4: 40, 6: 17, 8: 5, 10: 1, 12: 7, 24: 2,
         32: 1, 48: 1, 240: 1},
    21: {1: 22, 2: 37, 3: 6, 4: 12, 6: 5, 8: 1, 18: 1, 24: 2},
    22: {6: 5, 8: 1, 24: 2, 48: 1},
    23: {24: 1},
    24: {576: 1},
}

MAXIMAL_COUNTS: dict[int, dict[int, int]] = {
    10: {100: 1},
    11: {2: 1},
    12: {1: 18, 2: 9, 4: 4, 10: 1, 16: 1, 24: 1, 144: 1},
    13: {1: 1555, 2: 146, 4: 23},
    14: {1: 39597, 2: 980, 4: 52, 6: 4, 8: 4, 20: 2, 40: 1},
    15: {1: 221823, 2: 2997, 3: 9, 4: 64, 5: 2, 6: 4, 10: 3, 12: 1, 20: 1, 30: 1},
    16: {1: 341592, 2: 4573, 3: 10, 4: 113, 6: 16, 8: 7, 12: 11, 16: 1, 48: 1},
    17: {1: 192266, 2: 4081, 3: 9, 4: 59, 6: 7},
    18: {1: 49741, 2: 2251, 3: 19, 4: 54, 6: 26, 8: 8, 12: 2, 18: 1, 24: 1},
    19: {1: 6771, 2: 838, 3: 7, 4: 39, 6: 7, 10: 6},
    20: {1: 598, 2: 199, 3: 6, 4: 14, 6: 12, 8: 2, 10: 1, 12: 5, 24: 1, 48: 1,
         240: 1},
    21: {1: 17, 2: 20, 3: 2, 4: 11},
    22: {6: 3, 24: 2},
    23: {},
    24: {576: 1},
}


@dataclass(frozen=True)
class HighSymmetryRow:
    size: int
    group_order: int
    maximal: bool
    connected: bool
    orbits: frozenset[tuple[int, str, str]]  # (orbit size, local type, point group)


HIGH_SYMMETRY: tuple[HighSymmetryRow, ...] = (
    HighSymmetryRow(24, 576, True, False, frozenset({(96, "V", "C3v")})),
    HighSymmetryRow(20, 240, True, False,
                    frozenset({(40, "V", "C3v"), (60, "IV", "C2v")})),
    HighSymmetryRow(16, 192, False, True,
                    frozenset({(96, "IV", "Cs"), (8, "I", "Th")})),
    HighSymmetryRow(8, 192, False, True,
                    frozenset({(96, "II", "Cs"), (16, "I", "T")})),
    HighSymmetryRow(12, 144, True, True,
                    frozenset({(36, "IV", "C2v"), (72, "II", "Cs")})),
    HighSymmetryRow(10, 100, True, True,
                    frozenset({(100, "II", "C1"), (10, "III", "D5")})),
)


def orbit_count(size: int, stab_order: int) -> int:
    """Fixture cell with blank-as-zero semantics."""
    return ORBIT_COUNTS.get(size, {}).get(stab_order, 0)


def maximal_count(size: int, stab_order: int) -> int:
    return MAXIMAL_COUNTS.get(size, {}).get(stab_order, 0)


def row_total(size: int, maximal: bool = False) -> int:
    src = MAXIMAL_COUNTS if maximal else ORBIT_COUNTS
    return sum(src.get(size, {}).values())


def diff_against_fixture(
    counts: dict[tuple[int, int], int],
    sizes,
    maximal: bool = False,
) -> list[str]:
    """Cell-by-cell differences between computed counts and the fixture.

    Blank fixture cells count as zeros, so spurious computed cells are
    reported just like missing ones.
    """
    fixture = MAXIMAL_COUNTS if maximal else ORBIT_COUNTS
    diff = []
    for size in sizes:
        want_row = fixture.get(size, {})
        got_row = {s: n for (sz, s), n in counts.items() if sz == size}
        for stab in sorted(set(want_row) | set(got_row)):
            want = want_row.get(stab, 0)
            got = got_row.get(stab, 0)
            if want != got:
                diff.append(
                    f"size={size} stab={stab}: fixture={want} computed={got}"
                )
    return diff
