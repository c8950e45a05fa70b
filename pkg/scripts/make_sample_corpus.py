#!/usr/bin/env python3
"""Generate the bundled sample corpus (src/larder/data/sample_recipes.jsonl).

The corpus is synthetic: six cuisines with signature ingredient pools, five
meal courses, and five dietary classes derived truthfully from ingredient
properties (the class rosters are invented, not taken from any external
dataset). Every raw ingredient line is verified to clean to its intended
canonical name with the bundled lexicons before the file is written.

Deterministic: rerunning reproduces the file byte-for-byte.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from larder.textprep import PrepConfig, clean  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "src" / "larder" / "data" / "sample_recipes.jsonl"

# name -> (raw line template, flags)
# flags: m=meat/fish, d=dairy/egg/honey, g=gluten, f=fat-heavy, p=protein
CATALOG = {
    # shared staples
    "garlic": ("3 cloves garlic, minced", ""),
    "onions": ("1 onions, diced", ""),
    "olive oil": ("2 tablespoons olive oil", ""),
    "virgin olive oil": ("1 tbsp virgin olive oil", ""),
    "extra virgin olive oil": ("2 tsp extra virgin olive oil (cold pressed)", ""),
    "salt": ("1 tsp salt", ""),
    "black pepper": ("1/2 tsp black pepper, freshly cracked", ""),
    "tomatoes": ("2 tomatoes, chopped", ""),
    "scallions": ("4 scallions, sliced thin", ""),
    "carrots": ("2 carrots, julienned", ""),
    "celery": ("2 stalks celery, chopped", ""),
    "bell pepper": ("1 bell pepper, seeded and sliced", ""),
    "mushrooms": ("8 oz mushrooms, quartered", ""),
    "spinach": ("2 cups spinach, packed", ""),
    "broccoli": ("1 head broccoli, cut into florets", ""),
    "zucchini": ("1 zucchini, sliced", ""),
    "cauliflower": ("1 head cauliflower, broken into florets", ""),
    "green beans": ("8 oz green beans, trimmed", ""),
    "cucumber": ("1 cucumber, diced", ""),
    "avocado": ("1 avocado, sliced", ""),
    "lemon juice": ("2 tbsp lemon juice", ""),
    "lime juice": ("1 tbsp lime juice (about 1 lime)", ""),
    "white wine vinegar": ("1 tbsp white wine vinegar", ""),
    "rice vinegar": ("2 tsp rice vinegar", ""),
    "sugar": ("1 cup sugar", ""),
    "brown sugar": ("1/2 cup brown sugar, packed", ""),
    "honey": ("2 tbsp honey", "d"),
    "maple syrup": ("3 tbsp maple syrup", ""),
    "vanilla extract": ("1 tsp vanilla extract", ""),
    "cinnamon": ("1 tsp cinnamon", ""),
    "ginger": ("1 inch piece ginger, grated", ""),
    "cilantro": ("1/4 cup cilantro, chopped", ""),
    "parsley": ("2 tbsp parsley, minced", ""),
    "basil": ("1/4 cup basil, torn", ""),
    "thyme": ("2 sprigs thyme", ""),
    "rosemary": ("1 sprig rosemary", ""),
    "oregano": ("1 tsp oregano, dried", ""),
    "mint": ("2 tbsp mint, chopped", ""),
    "cumin": ("1 tsp cumin", ""),
    "paprika": ("1 tsp paprika", ""),
    "chili powder": ("1 tbsp chili powder", ""),
    "cayenne": ("1/4 tsp cayenne", ""),
    "turmeric": ("1/2 tsp turmeric", ""),
    "coriander": ("1 tsp coriander, ground", ""),
    "garam masala": ("2 tsp garam masala", ""),
    "curry powder": ("1 tbsp curry powder", ""),
    "star anise": ("2 star anise, whole", ""),
    "sesame seeds": ("1 tbsp sesame seeds, toasted", ""),
    "sesame oil": ("1 tsp sesame oil", ""),
    "peanuts": ("1/4 cup peanuts, crushed", "p"),
    "cashews": ("1/3 cup cashews, roasted", "p"),
    "almonds": ("1/4 cup almonds, slivered", "p"),
    "walnuts": ("1/2 cup walnuts, chopped", "p"),
    "raisins": ("1/3 cup raisins", ""),
    "dates": ("6 dates, pitted", ""),
    "strawberries": ("1 cup strawberries, hulled", ""),
    "blueberries": ("1 cup blueberries", ""),
    "banana": ("2 banana, ripe", ""),
    "apples": ("3 apples, peeled and cored", ""),
    "mango": ("1 mango, cubed", ""),
    "pineapple": ("1 cup pineapple, cubed", ""),
    "coconut flakes": ("1/4 cup coconut flakes, toasted", ""),
    # proteins
    "chicken breast": ("1 lb chicken breast, cubed", "mp"),
    "chicken thighs": ("2 lbs chicken thighs, trimmed", "mp"),
    "ground beef": ("1 lb ground beef (85 percent lean)", "mp"),
    "flank steak": ("1 lb flank steak, sliced against the grain", "mp"),
    "pork shoulder": ("2 lbs pork shoulder, cut into chunks", "mp"),
    "bacon": ("4 slices bacon, chopped", "mpf"),
    "salmon fillet": ("2 salmon fillet (6 oz each)", "mp"),
    "white fish": ("1 lb white fish, deboned", "mp"),
    "shrimp": ("1 lb shrimp, peeled and deveined", "mp"),
    "tofu": ("14 oz tofu, pressed and cubed", "p"),
    "tempeh": ("8 oz tempeh, sliced", "p"),
    "chickpeas": ("1 can chickpeas, drained and rinsed", "p"),
    "lentils": ("1 cup lentils, rinsed", "p"),
    "black beans": ("1 can black beans, drained", "p"),
    "eggs": ("3 eggs, beaten", "dp"),
    "paneer": ("8 oz paneer, cubed", "dpf"),
    # dairy and fats
    "butter": ("4 tbsp butter, softened", "df"),
    "ghee": ("2 tbsp ghee", "df"),
    "heavy cream": ("1/2 cup heavy cream", "df"),
    "sour cream": ("1/2 cup sour cream", "df"),
    "yogurt": ("1 cup yogurt, plain", "d"),
    "milk": ("1 cup milk", "d"),
    "parmesan cheese": ("1/2 cup parmesan cheese, grated", "df"),
    "mozzarella cheese": ("8 oz mozzarella cheese, torn", "df"),
    "cheddar cheese": ("1 cup cheddar cheese, shredded", "df"),
    "feta cheese": ("1/2 cup feta cheese, crumbled", "df"),
    "cream cheese": ("8 oz cream cheese, at room temperature", "df"),
    "coconut milk": ("1 can coconut milk (14 oz)", "f"),
    # carbs
    "jasmine rice": ("2 cups jasmine rice, rinsed", ""),
    "basmati rice": ("1 cup basmati rice, soaked", ""),
    "rice noodles": ("8 oz rice noodles", ""),
    "egg noodles": ("8 oz egg noodles", "dg"),
    "spaghetti": ("1 lb spaghetti", "g"),
    "penne pasta": ("12 oz penne pasta", "g"),
    "lasagna noodles": ("9 lasagna noodles", "g"),
    "flour": ("2 cups flour, sifted", "g"),
    "bread crumbs": ("1/2 cup bread crumbs", "g"),
    "baguette": ("1 baguette, sliced", "g"),
    "corn tortillas": ("8 corn tortillas, warmed", ""),
    "flour tortillas": ("6 flour tortillas", "g"),
    "tortilla chips": ("3 cups tortilla chips", ""),
    "potatoes": ("2 lbs potatoes, scrubbed", ""),
    "sweet potatoes": ("2 sweet potatoes, cubed", ""),
    "quinoa": ("1 cup quinoa, rinsed", ""),
    "oats": ("2 cups oats, rolled", ""),
    "couscous": ("1 cup couscous", "g"),
    "naan bread": ("4 naan bread, warmed", "g"),
    "puff pastry": ("1 sheet puff pastry, thawed", "gf"),
    "soy sauce": ("3 tbsp soy sauce", "g"),
    "hoisin sauce": ("2 tbsp hoisin sauce", "g"),
    "fish sauce": ("1 tbsp fish sauce", "m"),
    "sriracha": ("1 tsp sriracha", ""),
    "salsa": ("1 cup salsa", ""),
    "tomato paste": ("2 tbsp tomato paste", ""),
    "crushed tomatoes": ("1 can crushed tomatoes (28 oz)", ""),
    "vegetable broth": ("4 cups vegetable broth", ""),
    "chicken broth": ("4 cups chicken broth", "m"),
    "red wine": ("1/2 cup red wine", ""),
    "dijon mustard": ("1 tbsp dijon mustard", ""),
    "mayonnaise": ("1/4 cup mayonnaise", "df"),
    "peanut butter": ("3 tbsp peanut butter, smooth", "pf"),
    "dark chocolate": ("6 oz dark chocolate, chopped", "f"),
    "cocoa powder": ("1/4 cup cocoa powder, unsweetened", ""),
    "baking powder": ("2 tsp baking powder", ""),
    "baking soda": ("1/2 tsp baking soda", ""),
    "cornstarch": ("1 tbsp cornstarch", ""),
    "jalapeno": ("1 jalapeno, seeded and minced", ""),
    "red chili": ("2 red chili, sliced", ""),
    "lemongrass": ("1 stalk lemongrass, bruised", ""),
    "kaffir lime leaves": ("4 kaffir lime leaves", ""),
    "nutmeg": ("1/4 tsp nutmeg, grated", ""),
    "saffron": ("1 pinch saffron, bloomed in warm water", ""),
    "cardamom": ("4 pods cardamom, crushed", ""),
    "mustard seeds": ("1 tsp mustard seeds", ""),
    "curry leaves": ("10 curry leaves", ""),
    "shallots": ("2 shallots, sliced thin", ""),
    "leeks": ("2 leeks, washed and sliced", ""),
    "peas": ("1 cup peas (frozen are fine)", ""),
    "corn": ("1 cup corn, cut from the cob", ""),
    "edamame": ("1 cup edamame, shelled", "p"),
    "bok choy": ("2 heads bok choy, halved", ""),
    "cabbage": ("1/2 head cabbage, shredded", ""),
    "kale": ("1 bunch kale, stemmed", ""),
    "arugula": ("3 cups arugula", ""),
    "romaine lettuce": ("1 head romaine lettuce, chopped", ""),
    "olives": ("1/2 cup olives, pitted", ""),
    "capers": ("1 tbsp capers, drained", ""),
    "artichoke hearts": ("1 can artichoke hearts, quartered", ""),
    "asparagus": ("1 bunch asparagus, woody ends snapped", ""),
    "eggplant": ("1 eggplant, cubed", ""),
    "butternut squash": ("1 butternut squash, peeled and cubed", ""),
}

MEAT = {k for k, (_, f) in CATALOG.items() if "m" in f}
DAIRY = {k for k, (_, f) in CATALOG.items() if "d" in f}
GLUTEN = {k for k, (_, f) in CATALOG.items() if "g" in f}
FATTY = {k for k, (_, f) in CATALOG.items() if "f" in f}
PROTEIN = {k for k, (_, f) in CATALOG.items() if "p" in f}


def dietary_labels(title: str, ingredients: list[str]) -> list[str]:
    """Truthful dietary classes, primary (most salient) first.

    Recipe sites tag the most specific class; implied supersets are mostly
    left off. About a third of recipes carry one extra truthful label so
    multi-class membership stays represented.
    """
    items = set(ingredients)
    vegetarian = not (items & MEAT)
    vegan = vegetarian and not (items & DAIRY)
    gluten_free = not (items & GLUTEN)
    low_fat = not (items & FATTY)
    high_protein = bool(items & PROTEIN)

    if vegan:
        primary = "Vegan"
    elif vegetarian:
        primary = "Vegetarian"
    elif low_fat:
        primary = "Low fat"
    elif gluten_free:
        primary = "Gluten-free"
    else:
        primary = "High protein"

    labels = [primary]
    if (len(title) + len(ingredients)) % 3 == 0:
        for name, truth in [
            ("High protein", high_protein),
            ("Gluten-free", gluten_free),
            ("Low fat", low_fat),
            ("Vegetarian", vegetarian),
        ]:
            if truth and name != primary:
                labels.append(name)
                break
    return labels


# dish: (title, cuisine, course, base ingredients, variant extras)
DISHES = [
    # --- Asian ---
    ("Ginger Garlic Tofu Stir Fry", "Asian", "Main Dish",
     ["tofu", "garlic", "ginger", "soy sauce", "scallions", "sesame oil", "jasmine rice"],
     ["broccoli", "mushrooms", "bok choy", "carrots", "red chili", "sesame seeds"]),
    ("Coconut Curry Noodle Soup", "Asian", "Main Dish",
     ["rice noodles", "coconut milk", "lemongrass", "garlic", "ginger", "lime juice", "cilantro"],
     ["shrimp", "tofu", "mushrooms", "bok choy", "red chili", "kaffir lime leaves"]),
    ("Steamed Ginger Salmon", "Asian", "Main Dish",
     ["salmon fillet", "ginger", "scallions", "soy sauce", "jasmine rice", "sesame oil"],
     ["bok choy", "edamame", "red chili", "garlic", "mushrooms"]),
    ("Five Spice Beef with Rice", "Asian", "Main Dish",
     ["flank steak", "star anise", "garlic", "jasmine rice", "hoisin sauce", "scallions"],
     ["broccoli", "bell pepper", "ginger", "sesame seeds", "red chili"]),
    ("Sesame Cucumber Salad", "Asian", "Side Dish",
     ["cucumber", "rice vinegar", "sesame oil", "sesame seeds", "garlic"],
     ["scallions", "red chili", "cilantro", "ginger"]),
    ("Mango Coconut Sticky Rice", "Asian", "Dessert",
     ["jasmine rice", "coconut milk", "mango", "sugar", "sesame seeds"],
     ["coconut flakes", "mint", "lime juice"]),
    ("Scallion Egg Pancakes", "Asian", "Breakfast",
     ["eggs", "scallions", "flour", "sesame oil", "salt"],
     ["soy sauce", "red chili", "garlic", "cilantro"]),
    ("Edamame with Sea Salt", "Asian", "Appetizer",
     ["edamame", "salt", "sesame seeds"],
     ["garlic", "red chili", "lime juice", "sesame oil"]),

    # --- American ---
    ("Smoky Barbecue Pulled Pork", "American", "Main Dish",
     ["pork shoulder", "brown sugar", "paprika", "garlic", "onions", "dijon mustard"],
     ["cayenne", "black pepper", "apples", "celery"]),
    ("Classic Beef Chili", "American", "Main Dish",
     ["ground beef", "black beans", "crushed tomatoes", "chili powder", "onions", "garlic", "cumin"],
     ["bell pepper", "corn", "cheddar cheese", "sour cream", "jalapeno"]),
    ("Grilled Lemon Chicken Salad", "American", "Main Dish",
     ["chicken breast", "romaine lettuce", "lemon juice", "olive oil", "black pepper"],
     ["avocado", "cucumber", "tomatoes", "dijon mustard", "arugula"]),
    ("Mac and Cheese Bake", "American", "Main Dish",
     ["penne pasta", "cheddar cheese", "milk", "butter", "flour", "bread crumbs"],
     ["paprika", "mustard seeds", "parsley", "black pepper"]),
    ("Buttermilk Pancakes", "American", "Breakfast",
     ["flour", "milk", "eggs", "baking powder", "maple syrup", "butter"],
     ["blueberries", "banana", "cinnamon", "vanilla extract"]),
    ("Apple Walnut Crumble", "American", "Dessert",
     ["apples", "walnuts", "brown sugar", "oats", "butter", "cinnamon"],
     ["raisins", "nutmeg", "vanilla extract", "maple syrup"]),
    ("Roasted Sweet Potato Wedges", "American", "Side Dish",
     ["sweet potatoes", "olive oil", "paprika", "salt"],
     ["rosemary", "black pepper", "garlic", "cayenne"]),
    ("Loaded Nacho Platter", "American", "Appetizer",
     ["tortilla chips", "cheddar cheese", "black beans", "salsa", "jalapeno"],
     ["sour cream", "avocado", "scallions", "corn", "cilantro"]),

    # --- Italian ---
    ("Spaghetti with Basil Marinara", "Italian", "Main Dish",
     ["spaghetti", "crushed tomatoes", "garlic", "basil", "virgin olive oil", "onions"],
     ["oregano", "parmesan cheese", "red chili", "capers", "olives"]),
    ("Mushroom Spinach Lasagna", "Italian", "Main Dish",
     ["lasagna noodles", "mushrooms", "spinach", "mozzarella cheese", "crushed tomatoes", "garlic", "onions"],
     ["parmesan cheese", "basil", "oregano", "heavy cream"]),
    ("Lemon Herb Baked Fish", "Italian", "Main Dish",
     ["white fish", "lemon juice", "parsley", "garlic", "potatoes", "oregano"],
     ["olives", "capers", "tomatoes", "thyme"]),
    ("Creamy Chicken Piccata", "Italian", "Main Dish",
     ["chicken breast", "butter", "capers", "lemon juice", "flour", "parsley"],
     ["heavy cream", "garlic", "white wine vinegar", "spaghetti"]),
    ("Tomato Basil Bruschetta", "Italian", "Appetizer",
     ["baguette", "tomatoes", "basil", "garlic", "extra virgin olive oil"],
     ["mozzarella cheese", "black pepper", "oregano", "capers"]),
    ("Panzanella Salad", "Italian", "Side Dish",
     ["baguette", "tomatoes", "cucumber", "basil", "virgin olive oil", "white wine vinegar"],
     ["olives", "arugula", "capers", "feta cheese", "onions"]),
    ("Espresso Mascarpone Cups", "Italian", "Dessert",
     ["cream cheese", "heavy cream", "sugar", "cocoa powder", "vanilla extract"],
     ["dark chocolate", "cinnamon", "almonds"]),
    ("Frittata with Peas and Mint", "Italian", "Breakfast",
     ["eggs", "peas", "mint", "parmesan cheese", "olive oil"],
     ["leeks", "spinach", "black pepper", "feta cheese"]),

    # --- Mexican ---
    ("Chipotle Black Bean Tacos", "Mexican", "Main Dish",
     ["corn tortillas", "black beans", "cumin", "lime juice", "avocado", "cilantro", "onions"],
     ["salsa", "jalapeno", "corn", "cabbage", "chili powder"]),
    ("Carne Asada with Peppers", "Mexican", "Main Dish",
     ["flank steak", "lime juice", "garlic", "chili powder", "bell pepper", "onions"],
     ["cilantro", "jalapeno", "cumin", "corn tortillas", "avocado"]),
    ("Shrimp Veracruz", "Mexican", "Main Dish",
     ["shrimp", "tomatoes", "olives", "capers", "garlic", "jalapeno", "jasmine rice"],
     ["oregano", "lime juice", "cilantro", "onions"]),
    ("Chicken Enchiladas Verdes", "Mexican", "Main Dish",
     ["chicken thighs", "flour tortillas", "salsa", "sour cream", "cheddar cheese", "onions"],
     ["cilantro", "jalapeno", "cumin", "garlic"]),
    ("Elote Street Corn", "Mexican", "Side Dish",
     ["corn", "mayonnaise", "feta cheese", "chili powder", "lime juice"],
     ["cilantro", "garlic", "cayenne"]),
    ("Guacamole with Chips", "Mexican", "Appetizer",
     ["avocado", "lime juice", "cilantro", "onions", "tortilla chips"],
     ["jalapeno", "tomatoes", "garlic", "cumin"]),
    ("Churro Bites with Chocolate", "Mexican", "Dessert",
     ["flour", "sugar", "cinnamon", "butter", "eggs", "dark chocolate"],
     ["vanilla extract", "cayenne", "milk"]),
    ("Huevos Rancheros", "Mexican", "Breakfast",
     ["eggs", "corn tortillas", "salsa", "black beans", "cilantro"],
     ["avocado", "jalapeno", "feta cheese", "onions"]),

    # --- Indian ---
    ("Chana Masala", "Indian", "Main Dish",
     ["chickpeas", "crushed tomatoes", "onions", "garlic", "ginger", "garam masala", "cumin"],
     ["cilantro", "turmeric", "coriander", "basmati rice", "red chili"]),
    ("Butter Chicken", "Indian", "Main Dish",
     ["chicken thighs", "butter", "heavy cream", "tomato paste", "garam masala", "garlic", "ginger"],
     ["basmati rice", "naan bread", "cilantro", "turmeric", "cardamom"]),
    ("Palak Paneer", "Indian", "Main Dish",
     ["paneer", "spinach", "onions", "garlic", "ginger", "garam masala", "ghee"],
     ["heavy cream", "cumin", "turmeric", "naan bread"]),
    ("Tandoori Fish with Rice", "Indian", "Main Dish",
     ["white fish", "yogurt", "garam masala", "turmeric", "lemon juice", "basmati rice"],
     ["cilantro", "ginger", "garlic", "cayenne", "mint"]),
    ("Aloo Gobi", "Indian", "Side Dish",
     ["potatoes", "cauliflower", "turmeric", "cumin", "mustard seeds", "curry leaves"],
     ["ginger", "garlic", "cilantro", "peas", "red chili"]),
    ("Mango Lassi", "Indian", "Breakfast",
     ["yogurt", "mango", "milk", "honey", "cardamom"],
     ["saffron", "mint", "cinnamon"]),
    ("Coconut Rice Pudding", "Indian", "Dessert",
     ["basmati rice", "coconut milk", "sugar", "cardamom", "raisins"],
     ["cashews", "saffron", "almonds", "dates"]),
    ("Masala Roasted Cashews", "Indian", "Appetizer",
     ["cashews", "curry powder", "salt", "olive oil"],
     ["cayenne", "turmeric", "mustard seeds", "curry leaves"]),

    # --- French ---
    ("Coq au Vin Rouge", "French", "Main Dish",
     ["chicken thighs", "red wine", "bacon", "mushrooms", "onions", "thyme", "butter"],
     ["carrots", "garlic", "parsley", "flour", "potatoes"]),
    ("Ratatouille Provencale", "French", "Main Dish",
     ["eggplant", "zucchini", "bell pepper", "tomatoes", "extra virgin olive oil", "garlic", "thyme"],
     ["onions", "basil", "oregano", "parsley"]),
    ("Salmon en Papillote", "French", "Main Dish",
     ["salmon fillet", "leeks", "lemon juice", "thyme", "carrots"],
     ["asparagus", "shallots", "parsley", "black pepper"]),
    ("Quiche Lorraine", "French", "Main Dish",
     ["puff pastry", "eggs", "bacon", "heavy cream", "leeks"],
     ["nutmeg", "thyme", "cheddar cheese", "black pepper"]),
    ("French Onion Soup", "French", "Appetizer",
     ["onions", "butter", "baguette", "thyme", "red wine", "vegetable broth"],
     ["garlic", "black pepper", "mozzarella cheese", "flour"]),
    ("Haricots Verts Amandine", "French", "Side Dish",
     ["green beans", "almonds", "butter", "lemon juice", "shallots"],
     ["garlic", "parsley", "black pepper"]),
    ("Dark Chocolate Souffle", "French", "Dessert",
     ["dark chocolate", "eggs", "sugar", "butter", "vanilla extract"],
     ["cocoa powder", "flour", "heavy cream"]),
    ("Herbed Omelette", "French", "Breakfast",
     ["eggs", "butter", "parsley", "thyme", "black pepper"],
     ["mushrooms", "leeks", "feta cheese", "spinach"]),
]

# A few recipes gain a second cuisine to mirror multi-class membership.
FUSION = {
    "Ginger Garlic Tofu Stir Fry": "American",
    "Grilled Lemon Chicken Salad": "French",
    "Shrimp Veracruz": "American",
    "Coconut Curry Noodle Soup": "Indian",
    "Churro Bites with Chocolate": "French",
    "Frittata with Peas and Mint": "French",
}

# Appetizers that also pass as sides.
ALSO_SIDE = {"Elote Street Corn", "Edamame with Sea Salt", "Masala Roasted Cashews"}

VARIANT_WORDS = ["Family Style", "Weeknight", "Market", "Harvest", "Sunday"]


def make_recipes() -> list[dict]:
    rng = random.Random(20240101)
    recipes = []
    for title, cuisine, course, base, extras in DISHES:
        variants = [(title, list(base))]
        pool = list(extras)
        # one variant per extra, cycling a qualifier word into the title
        for i, extra in enumerate(pool[:4]):
            word = VARIANT_WORDS[i % len(VARIANT_WORDS)]
            chosen = [extra]
            if len(pool) > 1:
                other = pool[(i + 1) % len(pool)]
                if rng.random() < 0.5 and other != extra:
                    chosen.append(other)
            variants.append((f"{word} {title}", list(base) + chosen))
        for vtitle, ingredients in variants:
            cuisines = [cuisine]
            if vtitle == title and title in FUSION:
                cuisines.append(FUSION[title])
            courses = [course]
            if vtitle == title and title in ALSO_SIDE:
                courses.append("Side Dish")
            raw_lines = [CATALOG[k][0] for k in ingredients]
            rng.shuffle(raw_lines)
            recipes.append(
                {
                    "title": vtitle,
                    "ingredients": raw_lines,
                    "labels": {
                        "cuisines": cuisines,
                        "dietary": dietary_labels(vtitle, ingredients),
                        "course": courses,
                    },
                }
            )

    # Intentional duplicates: same title and ingredients, an extra class label.
    for index, extra_cuisine in [(0, "Indian"), (16, "American"), (40, "Italian")]:
        source = recipes[index]
        dup = json.loads(json.dumps(source))
        if extra_cuisine not in dup["labels"]["cuisines"]:
            dup["labels"]["cuisines"].append(extra_cuisine)
        recipes.append(dup)
    return recipes


def main() -> None:
    cfg = PrepConfig.default()
    for key, (raw, _) in CATALOG.items():
        got = clean(raw, cfg)
        if got != key:
            raise SystemExit(f"catalog entry {key!r}: raw line cleans to {got!r}")

    recipes = make_recipes()
    courses = {c for r in recipes for c in r["labels"]["course"]}
    cuisines = {c for r in recipes for c in r["labels"]["cuisines"]}
    dietary = {c for r in recipes for c in r["labels"]["dietary"]}
    assert len(cuisines) == 6, cuisines
    assert len(dietary) == 5, dietary
    assert len(courses) == 5, courses
    assert len(recipes) >= 200, len(recipes)

    with OUT.open("w", encoding="utf-8") as fh:
        for recipe in recipes:
            fh.write(json.dumps(recipe, ensure_ascii=False) + "\n")
    print(f"wrote {len(recipes)} recipes -> {OUT}")


if __name__ == "__main__":
    main()
