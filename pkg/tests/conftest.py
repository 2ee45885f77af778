from hypothesis import settings

# Deterministic example generation keeps the suite reproducible run to run.
settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")
