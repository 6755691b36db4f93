# Config package

