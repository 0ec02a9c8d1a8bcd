"""Shared constructions for the test suite."""

from xmodkit.groups import abelian_group, cyclic_group, group_from_generators
from xmodkit.xmods import make_xmod, module_xmod


def inversion_module_c8():
    """C8 -> C2 zero boundary, the involution inverting C8."""
    c8, c2 = cyclic_group(8), cyclic_group(2)
    rows = [tuple(range(8)), tuple((-a) % 8 for a in range(8))]
    return module_xmod(c8, c2, rows)


def multiplier_module_c8(k):
    c8, c2 = cyclic_group(8), cyclic_group(2)
    rows = [tuple(range(8)), tuple((k * a) % 8 for a in range(8))]
    return module_xmod(c8, c2, rows)


def surjection_xmod_c4_c2():
    """C4 -> C2 with the mod-2 boundary and trivial action."""
    c4, c2 = cyclic_group(4), cyclic_group(2)
    rows = [tuple(range(4))] * 2
    return make_xmod(c4, c2, (0, 1, 0, 1), rows)


def xm_16_2_inversion():
    """(C8 x C2 -> C2), the involution inverting the C8 coordinate."""
    g1 = abelian_group([8, 2])  # index a*2 + b
    c2 = cyclic_group(2)
    invert = tuple(((-a) % 8) * 2 + b for a in range(8) for b in range(2))
    return module_xmod(g1, c2, [tuple(range(16)), invert])


def xm_16_2_swap():
    """(C4 x C4 -> C2), the involution swapping the coordinates."""
    g1 = abelian_group([4, 4])  # index a*4 + b
    c2 = cyclic_group(2)
    swap = tuple(b * 4 + a for a in range(4) for b in range(4))
    return module_xmod(g1, c2, [tuple(range(16)), swap])


def relabeled_s3():
    return group_from_generators([(1, 0, 2), (1, 2, 0)])
