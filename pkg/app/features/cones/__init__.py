# Cones Feature Package
