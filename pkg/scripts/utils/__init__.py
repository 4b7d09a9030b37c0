# scripts/utils package
