from flask import Flask
from jinja2 import StrictUndefined

from config import Config

from app.utils.formatting import format_element, format_optional, format_verdict


def create_app(test_config=None):
    app = Flask(__name__, instance_relative_config=True)
    app.config.from_object(Config)
    # EPKIT_ENUM_CAP=500 etc.; values are parsed as JSON when possible
    app.config.from_prefixed_env('EPKIT')
    if test_config:
        app.config.update(test_config)

    app.logger.setLevel(app.config['LOG_LEVEL'])

    # Plain-text templates; .txt is never autoescaped
    app.jinja_options = {
        **app.jinja_options,
        'trim_blocks': True,
        'lstrip_blocks': True,
        'keep_trailing_newline': True,
        'undefined': StrictUndefined,
    }

    # Registrar blueprints
    from app.cli import cli_bp

    app.register_blueprint(cli_bp)

    app.jinja_env.filters['element'] = format_element
    app.jinja_env.filters['optional'] = format_optional
    app.jinja_env.filters['verdict'] = format_verdict

    return app
