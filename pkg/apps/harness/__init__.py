default_app_config = 'apps.harness.apps.HarnessConfig'
