from .algebra import *  # noqa: F401,F403
