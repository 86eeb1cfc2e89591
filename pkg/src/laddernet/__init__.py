"""Effective admittances of finite and infinite ladder networks over complex lambda."""
