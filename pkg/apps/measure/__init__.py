default_app_config = 'apps.measure.apps.MeasureConfig'
