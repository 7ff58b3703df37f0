from hypothesis import HealthCheck, settings, strategies as st

from provlab import syntax as sx
from provlab.gl import formula as mf

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(min_value=0, max_value=2**40)

terms = st.recursive(
    st.one_of(
        st.just(sx.Zero()),
        st.builds(sx.Var, st.integers(0, 4)),
        st.builds(sx.Lit, small_int),
    ),
    lambda t: st.one_of(
        st.builds(sx.Succ, t),
        st.builds(sx.Plus, t, t),
        st.builds(sx.Times, t, t),
        st.builds(sx.SubFn, t, t),
        st.builds(sx.ImpFn, t, t),
    ),
    max_leaves=6,
)

formulas = st.recursive(
    st.one_of(
        st.builds(sx.Eq, terms, terms),
        st.builds(sx.Leq, terms, terms),
        st.builds(sx.KLe, terms, terms),
        st.builds(sx.Pr, terms),
    ),
    lambda f: st.one_of(
        st.builds(sx.Not, f),
        st.builds(sx.And, f, f),
        st.builds(sx.Or, f, f),
        st.builds(sx.Implies, f, f),
        st.builds(sx.ForAll, st.integers(0, 4), f),
        st.builds(sx.Exists, st.integers(0, 4), f),
    ),
    max_leaves=6,
)

modal_formulas = st.recursive(
    st.one_of(st.sampled_from([mf.Atom("p"), mf.Atom("q"), mf.Bottom])),
    lambda f: st.one_of(st.builds(mf.Implies, f, f), st.builds(mf.Box, f)),
    max_leaves=5,
)
