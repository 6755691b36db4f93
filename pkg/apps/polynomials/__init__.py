default_app_config = 'apps.polynomials.apps.PolynomialsConfig'
