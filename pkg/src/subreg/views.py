"""Function-level views of a subsequential function: f top, translations, runs, actions."""

from .core import Action, lcp, show, strings_upto, strip_prefix
from .errors import ExactUnsupported
from .sfst import Sfst, actions_of_machine, distinguishing_suffix, minimize, outputs_upto, run_trace, transduce


class FunctionHandle:
    """A subsequential function together with its minimal onward machine.

    ``canon`` is built eagerly; every exact query walks it. The emitted output
    after reading ``x`` is the function's top on ``x``, and the state reached
    determines the translation.

    ``verify_upto`` spot-checks ``source`` against ``canon`` on every input of
    at most that length.
    """

    exact = True

    def __init__(self, source: Sfst, verify_upto=4):
        self.source = source
        self.canon = minimize(source)
        if verify_upto:
            got = outputs_upto(self.canon, verify_upto)
            want = outputs_upto(source, verify_upto)
            if got != want:
                bad = next(x for x in want if want[x] != got[x])
                raise AssertionError(f"canonical machine disagrees with source on {show(bad)}")

    def __repr__(self):
        return f"<FunctionHandle canon={self.canon!r}>"

    @property
    def input_alphabet(self):
        return self.canon.input_alphabet

    @property
    def output_alphabet(self):
        return self.canon.output_alphabet

    def __call__(self, x):
        return transduce(self.canon, x)

    def state(self, x):
        return self.canon.state_after(x)


class FormulaHandle:
    """A black-box total function over declared alphabets.

    Supports evaluation and the brute-force checkers only; exact queries raise
    ExactUnsupported.
    """

    exact = False

    def __init__(self, fn, input_alphabet, output_alphabet):
        self.fn = fn
        self.input_alphabet = tuple(sorted(input_alphabet))
        self.output_alphabet = tuple(sorted(output_alphabet))

    def __call__(self, x):
        return tuple(self.fn(tuple(x)))

    @property
    def canon(self):
        raise ExactUnsupported("a formula-only handle has no machine; use the brute-force checkers")


def handle(F, **kwargs):
    """Accept a FunctionHandle, a FormulaHandle, or a bare Sfst."""
    if isinstance(F, (FunctionHandle, FormulaHandle)):
        return F
    if isinstance(F, Sfst):
        return FunctionHandle(F, **kwargs)
    raise TypeError(f"expected a machine or a function handle, got {type(F).__name__}")


def _exact(F):
    F = handle(F)
    if not F.exact:
        raise ExactUnsupported("this query needs a machine-backed handle")
    return F


def f_top(F, x):
    """Longest prefix common to ``f(xy)`` over all continuations ``y``.

    Read off the onward machine as the output emitted along the run on ``x``.
    For ``x = λ`` this is λ: nothing is emitted before the first symbol.
    """
    return _exact(F).canon.emitted(x)


def translation_apply(F, x, y):
    """``f_x→(y)``: what ``f(xy)`` adds after ``f_top(x)``."""
    F = _exact(F)
    q = F.canon.state_after(x)
    return F.canon.emitted(y, q) + F.canon.final[F.canon.state_after(y, q)]


def run_of(F, x):
    """Computation history of the minimal machine on ``x`` as a tuple of Actions."""
    return run_trace(_exact(F).canon, x)


def actions_of_function(F):
    """Alphabet of actions ``x:y`` the function's minimal machine performs."""
    return actions_of_machine(_exact(F).canon)


def translations_differ_on(F, w, x, max_len=64):
    """Shortest continuation separating ``f_w→`` and ``f_x→``, or None if they agree."""
    F = _exact(F)
    return distinguishing_suffix(F.canon, F.canon.state_after(w), F.canon, F.canon.state_after(x), max_len)


# Bounded enumeration. These never touch the canonical machine and serve as
# independent oracles for the exact queries above.

def brute_top(f, x, sigma, max_ext):
    """lcp of ``f(x·y)`` over ``|y| <= max_ext``; λ for ``x = λ``."""
    x = tuple(x)
    if not x:
        return ()
    return lcp(f(x + y) for y in strings_upto(sigma, max_ext))


def brute_actions(f, sigma, max_prefix, max_ext):
    """Increments ``f_top(z·a) − f_top(z)`` over ``|z| <= max_prefix``."""
    found = set()
    for z in strings_upto(sigma, max_prefix):
        top = brute_top(f, z, sigma, max_ext)
        for a in sigma:
            found.add(Action(a, strip_prefix(top, brute_top(f, z + (a,), sigma, max_ext))))
    return found


__all__ = [
    "FunctionHandle", "FormulaHandle", "handle", "f_top", "translation_apply", "run_of",
    "actions_of_function", "translations_differ_on", "brute_top", "brute_actions",
]
