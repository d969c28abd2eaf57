from hypothesis import settings

# compiled kernels make first calls slow; timing deadlines would be noise
settings.register_profile("starpath", deadline=None)
settings.load_profile("starpath")

# acceptance results, printed as one line per criterion at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
