# Apps package

