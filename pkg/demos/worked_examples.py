"""Print the worked examples: a toric basis and its expansion, a split base set, two dimensions."""

from expanse.document import format_monomial, parse_monomial
from expanse.expansion import ExpansionShape, expand_set
from expanse.goldens import GB_ALPHA, GB_CONFIG
from expanse.polymatroid import BaseSet, check_white, expand_bases, swap_quadrics
from expanse.semigroup import is_normal_up_to, krull_dimension
from expanse.toric import expand_gb_single_split, toric_gb


def show(b, config, shape=None):
    def side(idx):
        return " ".join(f"y[{format_monomial(config[i], shape)}]" for i in idx)

    return f"{side(b.plus_indices())} - {side(b.minus_indices())}"


def main():
    A = [parse_monomial(m, 4) for m in GB_CONFIG]
    shape = ExpansionShape(GB_ALPHA)
    G = toric_gb(A)
    print("toric basis of A:")
    for g in G:
        print("  ", show(g, G.configuration))
    config = expand_set(A, shape).vectors.members
    G0, G1 = expand_gb_single_split(A, G, GB_ALPHA.index(2))
    for name, part in (("G0", G0), ("G1", G1)):
        print(f"{name} after splitting x4:")
        for g in part:
            print("  ", show(g, config, shape))

    B = expand_bases(BaseSet.of([(1, 1)]), ExpansionShape((2, 2)))
    print("bases of the split singleton:", [format_monomial(u, ExpansionShape((2, 2))) for u in B])
    print("swap quadrics:", [show(q, B.bases, ExpansionShape((2, 2))) for q in swap_quadrics(B)])
    print("generated by swaps:", check_white(B))

    cm = [(3, 0), (2, 1), (0, 3)]
    print("dimensions:", krull_dimension(cm), krull_dimension(expand_set(cm, ExpansionShape((2, 2))).vectors))
    print("normality up to degree 9:", is_normal_up_to(cm, 9))


if __name__ == "__main__":
    main()
