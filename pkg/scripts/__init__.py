"""Database initialization scripts.""" 