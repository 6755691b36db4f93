default_app_config = 'apps.bounds.apps.BoundsConfig'
