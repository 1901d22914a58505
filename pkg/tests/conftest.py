from hypothesis import settings

settings.register_profile("covertower", deadline=None)
settings.load_profile("covertower")
