DEBUG = True

SECRET_KEY = 'tests'

USE_TZ = True

# Serializer error messages are compared verbatim.
USE_I18N = False
