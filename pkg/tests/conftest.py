import random

import pytest

from subreg import machines
from subreg.core import Tier, lcp, strings_upto, strip_prefix
from subreg.sfst import outputs_upto, random_sfst
from subreg.views import FunctionHandle


@pytest.fixture(scope="session")
def bms():
    """The bundled reference machines by name."""
    return machines.builtins()


@pytest.fixture(scope="session")
def handles(bms):
    return {name: FunctionHandle(T) for name, T in bms.items()}


@pytest.fixture(scope="session")
def rs(handles):
    return handles["syncope"]


def same_function_upto(T1, T2, n):
    return outputs_upto(T1, n) == outputs_upto(T2, n)


def random_machines(count, seed, max_states=4, max_alpha=3):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        sigma = "abc"[: rng.randint(1, max_alpha)]
        gamma = "xyz"[: rng.randint(1, max_alpha)]
        out.append(random_sfst(rng, rng.randint(1, max_states), sigma, gamma))
    return out


def enumerated_translation_classes(f, sigma, max_prefix=5, max_cont=4, max_ext=6):
    """Distinct translations seen over inputs up to ``max_prefix``.

    Each translation is fingerprinted by its values on all continuations up to
    ``max_cont``; tops come from lcp over extensions up to ``max_ext``.
    """
    def top(x):
        if not x:
            return ()
        return lcp(f(x + y) for y in strings_upto(sigma, max_ext))

    prints = set()
    for x in strings_upto(sigma, max_prefix):
        t = top(x)
        prints.add(tuple(strip_prefix(t, f(x + y)) for y in strings_upto(sigma, max_cont)))
    return len(prints)


def all_tiers(symbols):
    symbols = list(symbols)
    return [Tier.from_mask(symbols, m) for m in range(1 << len(symbols))]


def random_local_machine(rng, kind, sigma="ab", gamma="xy", max_output=2):
    """Random machine whose states are the last input symbol (``kind='isl'``)
    or the last output symbol (``kind='osl'``), both with window 2 on the full tier."""
    from subreg.core import LB
    from subreg.sfst import Sfst

    gamma = sorted(gamma)
    memory = sorted(sigma) if kind == "isl" else gamma
    states = [LB] + memory

    def out():
        return tuple(rng.choice(gamma) for _ in range(rng.randint(0, max_output)))

    trans = {}
    for q in states:
        for a in sorted(sigma):
            y = out()
            if kind == "isl":
                r = a
            else:
                r = y[-1] if y else q
            trans[q, a] = (f"m{r}" if r != LB else "m0", y)
    names = {q: (f"m{q}" if q != LB else "m0") for q in states}
    trans = {(names[q], a): v for (q, a), v in trans.items()}
    finals = {names[q]: out() for q in states}
    return Sfst(list(names.values()), sigma, gamma, "m0", trans, finals)
