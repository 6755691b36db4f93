default_app_config = 'apps.ensembles.apps.EnsemblesConfig'
