from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    deadline=None,  # shared CI boxes make wall-clock deadlines flaky
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")
