import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from classtrans.survey import enumerate_class_transpositions

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CT_UPTO_10 = enumerate_class_transpositions(10)
CT_UPTO_8 = enumerate_class_transpositions(8)

transpositions = st.sampled_from(CT_UPTO_10)
small_transpositions = st.sampled_from(CT_UPTO_8)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
