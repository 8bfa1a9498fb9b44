"""Shared hypothesis strategies."""
from hypothesis import strategies as st


def _shifted(x, s):
    return f"({x}{'-' if s >= 0 else '+'}{abs(s)})"


@st.composite
def plane_curves(draw):
    kind = draw(st.sampled_from(["branch", "graph", "line", "node"]))
    U, V = _shifted("u", draw(st.integers(-2, 2))), _shifted("v", draw(st.integers(-2, 2)))
    if kind == "branch":
        a, b = draw(st.integers(1, 4)), draw(st.integers(1, 5))
        text = f"{V}^{a} - {U}^{b}"
    elif kind == "graph":
        k = draw(st.integers(1, 4))
        text = f"{U} + {V}^{k}"
    elif kind == "line":
        a, b = draw(st.integers(0, 3)), draw(st.integers(1, 3))
        text = f"{a}*{U} {draw(st.sampled_from('+-'))} {b}*{V}"
    else:
        text = f"{V}^2 - {U}^2*({U}+1)"
    return text
