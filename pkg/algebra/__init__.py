# Arcade - Algebra Module
