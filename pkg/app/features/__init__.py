# Features Package
