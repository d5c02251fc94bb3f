"""Two separating examples between the input/output and the action-based classes."""

# %%
from subreg import machines
from subreg.classes import LocalityParams, check_tiosl, search_tiers, shape_check_tssl
from subreg.core import Tier, word
from subreg.sfst import actions_of_machine, is_onward, minimize, onward_violation, state_token
from subreg.views import FunctionHandle

# %%
# A function that is 2,2-TIOSL on {a, b} but TSSL on no tier.
F = FunctionHandle(machines.tiosl_not_tssl())
print(" ".join(F(word("b a a b b"))))
print(check_tiosl(F, LocalityParams(2, 2), Tier("abcd", "ab")).describe())
# The a:λ action hides which symbol came first, so runs forget what outputs remember.
print(search_tiers(F, "tssl", max_k=3).summary())

# %%
# xy -> xyx. A machine of 2-TSSL shape computes it, but only by delaying output.
T = machines.nononward_tssl()
print(" ".join(T(word("b a b"))))
print("TSSL shape:", shape_check_tssl(T, 2, Tier.full(actions_of_machine(T))))
q, prefix = onward_violation(T)
print("onward:", is_onward(T), "| state", state_token(q), "could emit", " ".join(prefix), "earlier")

# %%
# Once output is pushed forward the runs lose the first symbol.
M = minimize(T)
print(len(M.states), "states after minimization")
print(search_tiers(FunctionHandle(T), "tssl", max_k=3).summary())
