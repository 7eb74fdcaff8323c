"""
Word Forge

Reduced words, generator pairs, the translating-word search and
bounded-length freeness certificates.
"""

from modules.words.word import (
    ALPHABET,
    EMPTY_WORD,
    GeneratorPair,
    Word,
    eval_word,
    read_words,
    word_product,
    word_reduce,
)
from modules.words.forge import (
    NearIdentityWord,
    RelationCertificate,
    TranslatingWords,
    certify_no_relation,
    check_word_conditions,
    conjugate_form,
    find_translating_words,
    flanking_failure,
    near_identity_scan,
)

__all__ = [
    'ALPHABET', 'EMPTY_WORD', 'GeneratorPair', 'Word', 'eval_word', 'read_words',
    'word_product', 'word_reduce', 'NearIdentityWord', 'RelationCertificate',
    'TranslatingWords', 'certify_no_relation', 'check_word_conditions', 'conjugate_form',
    'find_translating_words', 'flanking_failure', 'near_identity_scan',
]
