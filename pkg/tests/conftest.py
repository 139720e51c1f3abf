import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from arithtop.words import FreeGroup

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def letters(n, max_size=12):
    return st.lists(st.integers(1, n).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_size)


@st.composite
def words(draw, n=3, max_size=12):
    return FreeGroup(n).word(draw(letters(n, max_size)))
