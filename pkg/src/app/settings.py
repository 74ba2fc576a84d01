"""
Django settings for the Tucker toolkit project.

The project has no web front end: Django provides configuration, the
management-command CLI, the ORM for recorded runs and the test runner.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-tucker-toolkit-local-key'
)

DEBUG = os.environ.get('DJANGO_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'core',
    'tensor',
    'linalg',
    'sketch',
    'tucker',
    'bounds',
    'testbed',
]


# Database
# https://docs.djangoproject.com/en/5.1/ref/settings/#databases
#
# Recorded runs go to PostgreSQL when DB_HOST is set (docker-compose);
# otherwise a local SQLite file is used.

if os.environ.get('DB_HOST'):
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'HOST': os.environ.get('DB_HOST'),
            'NAME': os.environ.get('DB_NAME'),
            'USER': os.environ.get('DB_USER'),
            'PASSWORD': os.environ.get('DB_PASS'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.1/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
# https://docs.djangoproject.com/en/5.1/topics/logging/

TUCKER_LOG_LEVEL = os.environ.get('TUCKER_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        name: {
            'handlers': ['console'],
            'level': TUCKER_LOG_LEVEL,
            'propagate': False,
        }
        for name in (
            'core', 'tensor', 'linalg', 'sketch', 'tucker', 'bounds',
            'testbed',
        )
    },
}


# Solver defaults read by the management commands.

TUCKER = {
    'OVERSAMPLING': 10,
    'POWER': 1,
    'PVE_TOL': 0.5,
    'PVE_QMAX': 10000,
    'SKETCH': 'gaussian',
    'BOUND_BETA': 2.0,
    'BOUND_GAMMA': 2.0,
    'SKETCH_THREADS': int(
        os.environ.get('TUCKER_SKETCH_THREADS', os.cpu_count() or 1)
    ),
}
