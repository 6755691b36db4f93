# Coefficient law providers
