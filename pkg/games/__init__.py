# Arcade - Games Module
