"""Walk through GL4 with mu = (1,1,0,0): pairs, classes, the signed sum,
and its value on the Borel-induced representation with all ones."""

from cocharpairs import (
    GroupSpec,
    basic_class,
    build_root_datum,
    down_set,
    enumerate_B,
    evaluate_M,
    fixtures,
    hasse_dot,
    top_pair,
)

rd = build_root_datum(GroupSpec.gl(4))
mu = (1, 1, 0, 0)

poset = down_set(rd, top_pair(rd, mu))
print(f"{len(poset.nodes)} pairs below the top pair, {len(poset.edges)} covering relations")
print(hasse_dot(rd, poset))

print("classes:")
for b in enumerate_B(rd, mu):
    print("  ", tuple(str(x) for x in b.newton), "kappa", b.kappa)

b = basic_class(rd, mu)
res = evaluate_M(rd, b, mu, fixtures.rep("111"))
print("value at the basic class:")
print("  ", fixtures.render(res))
