from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,  # exact arithmetic has long-tailed per-example times
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
