"""Rhythmic syncope: which tiers make it local?"""

# %%
from subreg import machines
from subreg.classes import LocalityParams, build_canonical_tssl, check_tiosl, check_tssl, search_tiers
from subreg.core import Tier, word
from subreg.formats import serialize
from subreg.sfst import equivalent
from subreg.views import FunctionHandle, actions_of_function, f_top, run_of

rs = FunctionHandle(machines.syncope())
for x in ["V C V C V", "C V V V C", "V"]:
    print(x, "->", " ".join(rs(word(x))) or "λ")

# %%
# The top of "C V C" is "C C": the deleted vowel leaves no trace in the output.
# The run still remembers it.
print(f_top(rs, word("C V C")))
print([a.token for a in run_of(rs, word("C V C"))])

# %%
# No input/output window sees enough: V V and V V V end alike on both tapes,
# yet the next vowel is kept after one and deleted after the other.
t = Tier("CV", "V")
v = check_tiosl(rs, LocalityParams(3, 3), t)
print(v.describe())

# %%
# On the vowel actions the previous action alone decides what happens next.
acts = actions_of_function(rs)
vowels = Tier(acts, [a for a in acts if a.input == "V"])
print(check_tssl(rs, 2, vowels).describe())

# Putting C:C on the tier breaks it, since a consonant pushes the vowel out of the window.
print(check_tssl(rs, 2, Tier.full(acts)).describe())

# %%
T = build_canonical_tssl(rs, 2, vowels)
print(serialize(T))
print("same function as the hand-built machine:", equivalent(T, machines.syncope()))

# %%
print(search_tiers(rs, "tssl", max_k=3).summary())
