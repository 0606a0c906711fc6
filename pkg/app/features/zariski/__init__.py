# Zariski Feature Package
