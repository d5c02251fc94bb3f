"""Factoring through tagged outputs, and checking the processes on real words."""

# %%
from subreg import machines
from subreg.classes import LocalityParams, check_tiosl
from subreg.core import Tier, strings_upto
from subreg.decompose import decompose
from subreg.sfst import transduce

T = machines.nononward_tssl()
g, h = decompose(T)
print(sorted(g.output_alphabet))

# %%
ok = all(h(transduce(g, x)) == transduce(T, x) for x in strings_upto("ab", 8))
print("h(g(x)) == T(x) up to length 8:", ok)
full = Tier.full(set(g.input_alphabet) | set(g.output_alphabet))
print("g is 1,2-TIOSL:", check_tiosl(g, LocalityParams(1, 2), full).member)

# %%
red, syn = machines.reduction(), machines.syncope()
for lang, machine in [("ojibwe", red), ("macushi", syn)]:
    pairs, classes = machines.language_data(lang)
    for under, surface in pairs:
        cv = machines.transliterate(classes, under)
        got = transduce(machine, cv)
        want = machines.transliterate(classes, surface)
        print(lang, "".join(under), " ".join(got), "ok" if got == want else f"expected {' '.join(want)}")
# /piripi/ keeps its final vowel on the surface; plain syncope deletes it.
