from hypothesis import settings

# derandomized so the suite is reproducible run to run
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")
