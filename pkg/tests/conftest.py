from hypothesis import settings

# quadrature-backed properties have uneven runtimes; deadlines only add flakiness
settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")
