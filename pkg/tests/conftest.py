import sys

from hypothesis import settings

# factoring and subgroup enumeration make single examples uneven in cost
settings.register_profile("entropia", deadline=None, max_examples=50)
settings.load_profile("entropia")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
