"""
Settings for the project.
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    color: bool = False
    "Colour the level names of diagnostics written to stderr by the command-line tool."

    class Config:
        env_prefix = "QC_"


settings = Settings()
