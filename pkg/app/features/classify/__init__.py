# Classify Feature Package
