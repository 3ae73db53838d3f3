from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LOG, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
