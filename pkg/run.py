import click
from flask.cli import FlaskGroup

from app import create_app


@click.group(cls=FlaskGroup, create_app=create_app, add_default_commands=False)
def cli():
    """Generalized inverses and EP characterizations in rings with involution."""


if __name__ == '__main__':
    cli()
