__all__ = ['common', 'free_word', 'dihedral', 'shadows', 'poset', 'structure',
           'lochak_schneps', 'profinite', 'verify', 'control']
