from hypothesis import settings

settings.register_profile("det", deadline=None, derandomize=True)
settings.load_profile("det")
