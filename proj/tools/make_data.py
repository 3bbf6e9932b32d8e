#!/usr/bin/env python3
# Copyright 2026 The Flint Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled datasets in data/.

Every file is a pure function of this script; rerunning it reproduces the
committed bytes.

  ner.jsonl      200 tagged sentences, BIO entity tags
  pos.jsonl      the same 200 sentences with Penn Treebank tags
  toy_sa.jsonl   100 sentiment samples, one lowercase keyword each
  attack.jsonl   20 positive samples whose only keyword is "good"
  absa.jsonl     restaurant reviews with aspect terms
  nli.jsonl      premise/hypothesis pairs
  slice103.jsonl 103 samples of graded length
"""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(os.path.dirname(HERE), "data")

PER_MAN = ["John", "Tom", "Jack", "James", "Peter", "David", "Michael", "Robert",
           "William", "George", "Henry", "Paul", "Mark", "Daniel", "Steven",
           "Edward"]
PER_WOMAN = ["Ann", "Mary", "Susan", "Emma", "Lucy", "Alice", "Sarah", "Linda",
             "Kate", "Jane", "Helen", "Laura", "Julia", "Nancy", "Karen"]
LOC = ["Shanghai", "Beijing", "Tokyo", "India", "China", "Seoul", "Ireland",
       "London", "Paris", "Berlin", "Germany", "France", "Italy", "Spain",
       "Dublin", "Rome", "Canada", "Boston", "Chicago", "Texas", "New York",
       "Mexico", "Brazil", "Los Angeles", "New Zealand", "Australia", "Sydney"]
ORG = ["Google", "Microsoft", "IBM", "Reuters", "NASA", "BBC", "Intel",
       "Toyota", "Boeing", "Sony", "Samsung", "Siemens", "UNICEF", "USTC",
       "Fudan University", "United Nations", "Stanford University"]

# Tagged templates: word/TAG, with {PER}, {LOC}, {ORG}, {NUM} slots.
TEMPLATES = [
    "{PER}/NNP lives/VBZ in/IN {LOC}/NNP ./.",
    "{PER}/NNP works/VBZ for/IN {ORG}/NNP in/IN {LOC}/NNP ./.",
    "{PER}/NNP visited/VBD {LOC}/NNP with/IN {PER}/NNP last/JJ year/NN ./.",
    "{ORG}/NNP opened/VBD a/DT big/JJ office/NN in/IN {LOC}/NNP ./.",
    "{PER}/NNP has/VBZ {NUM}/CD sisters/NNS and/CC loves/VBZ NLP/NNP ./.",
    "{PER}/NNP is/VBZ studying/VBG NLP/NNP at/IN {ORG}/NNP ./.",
    "The/DT quiet/JJ students/NNS in/IN {LOC}/NNP like/VBP {ORG}/NNP ./.",
    "{PER}/NNP said/VBD the/DT prefixed/JJ word/NN was/VBD hard/JJ ./.",
    "{PER}/NNP bought/VBD {NUM}/CD old/JJ cars/NNS in/IN {LOC}/NNP ./.",
    "{ORG}/NNP will/MD not/RB leave/VB {LOC}/NNP this/DT year/NN ./.",
    "{PER}/NNP and/CC {PER}/NNP work/VBP at/IN {ORG}/NNP ./.",
    "{PER}/NNP played/VBD a/DT fast/JJ game/NN in/IN {LOC}/NNP ./.",
    "{PER}/NNP called/VBD {PER}/NNP from/IN {LOC}/NNP ./.",
    "{ORG}/NNP reported/VBD {NUM}/CD new/JJ cases/NNS in/IN {LOC}/NNP ./.",
    "{PER}/NNP loves/VBZ the/DT light/JJ rain/NN in/IN {LOC}/NNP ./.",
    "{PER}/NNP did/VBD n't/RB visit/VB {LOC}/NNP ./.",
    "{PER}/NNP wrote/VBD a/DT famous/JJ book/NN about/IN {ORG}/NNP ./.",
    "The/DT small/JJ team/NN at/IN {ORG}/NNP finished/VBD the/DT study/NN ./.",
    "{PER}/NNP drives/VBZ to/TO {LOC}/NNP every/DT day/NN ./.",
    "{PER}/NNP was/VBD happy/JJ to/TO join/VB {ORG}/NNP ./.",
]


def expand(template, rng):
  tokens, ner, pos = [], [], []
  for item in template.split():
    word, tag = item.rsplit("/", 1)
    if word in ("{PER}", "{LOC}", "{ORG}"):
      kind = word[1:-1]
      if kind == "PER":
        name = rng.choice(PER_MAN + PER_WOMAN)
      elif kind == "LOC":
        name = rng.choice(LOC)
      else:
        name = rng.choice(ORG)
      parts = name.split()
      tokens += parts
      ner += ["B-" + kind] + ["I-" + kind] * (len(parts) - 1)
      pos += ["NNP"] * len(parts)
    elif word == "{NUM}":
      tokens.append(str(rng.randint(2, 12)))
      ner.append("O")
      pos.append("CD")
    else:
      tokens.append(word)
      ner.append("B-ORG" if word == "NLP" else "O")
      pos.append(tag)
  return tokens, ner, pos


def tagged_corpora(rng):
  ner, pos = [], []
  for i in range(200):
    tokens, ner_tags, pos_tags = expand(TEMPLATES[i % len(TEMPLATES)], rng)
    ner.append({"id": "ner-%03d" % i, "tokens": tokens, "tags": ner_tags})
    pos.append({"id": "pos-%03d" % i, "tokens": tokens, "tags": pos_tags})
  return ner, pos


NEGATIVE = ["bad", "awful", "terrible", "boring", "dull", "poor",
            "disappointing"]
POSITIVE = ["good", "great", "excellent", "wonderful", "enjoyable", "superb",
            "delightful"]
SUBJECTS = ["the movie", "the plot", "the acting", "the ending", "the music",
            "the story", "the script", "the cast", "the film", "the show"]
SA_TEMPLATES = [
    "{s} was {k} .",
    "i thought {s} was {k} .",
    "honestly , {s} was {k} from start to finish .",
    "he said {s} was {k} .",
    "she found {s} {k} .",
    "i do not think {s} was anything but {k} .",
    "was {s} {k} ? i would say yes .",
    "overall {s} felt {k} to me .",
    "my friends agreed that {s} was {k} .",
    "we never expected {s} to be so {k} .",
]


def toy_sa(rng):
  # 60 negative and 40 positive: the majority class is negative, and each
  # sample carries exactly one lowercase keyword of its own class.
  labels = ["negative"] * 60 + ["positive"] * 40
  rng.shuffle(labels)
  rows = []
  for i, label in enumerate(labels):
    word = rng.choice(NEGATIVE if label == "negative" else POSITIVE)
    text = SA_TEMPLATES[i % len(SA_TEMPLATES)].format(s=rng.choice(SUBJECTS), k=word)
    rows.append({"id": "sa-%03d" % i, "text": text, "label": label})
  return rows


def attack_set(rng):
  templates = ["a good movie overall .", "the plot was good .",
               "i found the acting good .", "what a good story .",
               "the music is good and memorable .", "it was a good film .",
               "the cast did a good job .", "such a good ending .",
               "the script is good .", "my sister said it was good .",
               "this show is good .", "a good way to spend an evening .",
               "the director made a good choice .", "the songs were good .",
               "the first half was good .", "a truly good performance .",
               "the visuals are good .", "the pacing felt good .",
               "the costumes looked good .", "the dialogue was good ."]
  return [{"id": "atk-%02d" % i, "text": t, "label": "positive"}
          for i, t in enumerate(templates)]


ABSA = [
    ("Tasty burgers , but soggy fries .", [("burgers", "positive"), ("fries", "negative")]),
    ("Terrible burgers , but crispy fries .", [("burgers", "negative"), ("fries", "positive")]),
    ("The service was friendly and the pasta was delicious .", [("service", "positive"), ("pasta", "positive")]),
    ("The staff was rude but the pizza was great .", [("staff", "negative"), ("pizza", "positive")]),
    ("Great wine , but the dessert was bland .", [("wine", "positive"), ("dessert", "negative")]),
    ("The coffee was bitter and the cake was stale .", [("coffee", "negative"), ("cake", "negative")]),
    ("Lovely atmosphere , but slow service .", [("atmosphere", "positive"), ("service", "negative")]),
    ("The soup was cold , but the bread was fresh .", [("soup", "negative"), ("bread", "positive")]),
    ("Excellent steak and friendly waiters .", [("steak", "positive"), ("waiters", "positive")]),
    ("The menu is limited but the prices are fair .", [("menu", "negative"), ("prices", "positive")]),
    ("Awful noodles , but tasty dumplings .", [("noodles", "negative"), ("dumplings", "positive")]),
    ("The salad was fresh and the dressing was good .", [("salad", "positive"), ("dressing", "positive")]),
]


def absa(rng):
  rows = []
  for i, (text, aspects) in enumerate(ABSA):
    for target in range(len(aspects)):
      spans = []
      for term, polarity in aspects:
        start = text.index(term)
        spans.append({"term": term, "start": start, "end": start + len(term),
                      "polarity": polarity})
      row = {"id": "absa-%02d-%d" % (i, target), "text": text, "aspects": spans}
      if target:
        row["target"] = target
      rows.append(row)
  return rows


NLI = [
    ("The judges heard the actors resigned .", "The judges heard the actors .", "neutral"),
    ("John bought 3 new cars in Boston .", "John bought 3 cars .", "entailment"),
    ("The tall students visited Paris last year .", "The students visited Paris .", "entailment"),
    ("Mary is happy with the new house .", "Mary is happy .", "entailment"),
    ("The doctors waited for 2 hours .", "The doctors waited .", "entailment"),
    ("Tom sold his old car .", "Tom bought a car .", "contradiction"),
    ("The small dog slept all day .", "The dog was awake all day .", "contradiction"),
    ("The lawyers thanked the judge .", "The lawyers admired the judge .", "neutral"),
    ("Alice finished the hard exam early .", "Alice finished the exam .", "entailment"),
    ("The artists danced in London .", "The artists danced .", "entailment"),
    ("Peter owns 4 large farms .", "Peter owns farms .", "entailment"),
    ("The bankers were angry about the news .", "The bankers were angry .", "entailment"),
    ("The city was quiet at night .", "The city was loud at night .", "contradiction"),
    ("Susan read 5 books this summer .", "Susan read books .", "entailment"),
    ("The tourists laughed at the joke .", "The tourists were sad .", "neutral"),
    ("The old bridge was closed .", "The bridge was closed .", "entailment"),
]


def nli():
  return [{"id": "nli-%02d" % i, "premise": p, "hypothesis": h, "label": l}
          for i, (p, h, l) in enumerate(NLI)]


def slice103(rng):
  fillers = ["really", "quite", "rather", "very", "truly", "so"]
  rows = []
  for i in range(103):
    # Lengths from 3 to 25 tokens, interleaved so file order is not sorted.
    n = 3 + (i * 7) % 23
    words = ["the", "movie"] + [rng.choice(fillers) for _ in range(n - 3)] + ["."]
    if i % 5 == 0:
      words.insert(2, "not")
    if i % 7 == 0:
      words[0:1] = ["why", "is", "the"]
      words[-1] = "?"
    if i % 4 == 1:
      words[0:0] = ["he", "said"]
    if i % 6 == 2:
      words[0:0] = ["she", "said"]
    label = "negative" if i % 3 else "positive"
    rows.append({"id": "sl-%03d" % i, "text": " ".join(words), "label": label})
  return rows


def write(name, rows):
  with open(os.path.join(OUT, name), "w", encoding="utf-8") as f:
    for row in rows:
      f.write(json.dumps(row, ensure_ascii=False) + "\n")


def main():
  os.makedirs(OUT, exist_ok=True)
  ner, pos = tagged_corpora(random.Random(7))
  write("ner.jsonl", ner)
  write("pos.jsonl", pos)
  write("toy_sa.jsonl", toy_sa(random.Random(11)))
  write("attack.jsonl", attack_set(random.Random(13)))
  write("absa.jsonl", absa(random.Random(17)))
  write("nli.jsonl", nli())
  write("slice103.jsonl", slice103(random.Random(19)))


if __name__ == "__main__":
  main()
