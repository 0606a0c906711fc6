# Backend App Package
