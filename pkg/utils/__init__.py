# Arcade - Utils Module
