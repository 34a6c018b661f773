import logging

from application.config.config import Config


log = logging.getLogger(Config.APP_NAME)


def set_log_level(level: str) -> None:
    # CLI override of the dictConfig default
    log.setLevel(level.upper())
