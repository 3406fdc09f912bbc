from flask import Blueprint

# cli_group=None puts the commands directly under ``flask``.
cli_bp = Blueprint('cli', __name__, cli_group=None)

from app.cli import commands  # noqa: E402,F401
