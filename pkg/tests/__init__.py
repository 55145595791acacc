"""Test directory init"""
