"""Isotone maps between finite posets and the relations of isotonian algebras."""
