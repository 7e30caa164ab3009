import hypothesis

# Keep hypothesis runs reproducible; failures replay the same way everywhere.
hypothesis.settings.register_profile(
    "weightsim", derandomize=True, deadline=None)
hypothesis.settings.load_profile("weightsim")
