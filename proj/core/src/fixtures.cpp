// SPDX-License-Identifier: Apache-2.0
#include <trajforge/error.hpp>
#include <trajforge/seed.hpp>
#include <trajforge/tool_registry.hpp>

#include <fmt/format.h>

#include <array>
#include <set>
#include <string_view>

namespace trajforge::tools
{

FixtureStore::FixtureStore(Json tables, std::uint64_t seed): _tables(std::move(tables)), _seed(seed)
{
    if (!_tables.is_object())
        throw Error(ErrorCode::MalformedDocument, "fixture tables must be an object of record lists");
}

bool FixtureStore::has_table(std::string const& name) const
{
    return _tables.contains(name);
}

auto FixtureStore::table(std::string const& name) const -> Json const&
{
    if (!has_table(name))
        throw Error(ErrorCode::ToolExecutionFailure, fmt::format("fixture table \"{}\" does not exist", name));
    return _tables.at(name);
}

auto FixtureStore::table(std::string const& name) -> Json&
{
    if (!has_table(name))
        throw Error(ErrorCode::ToolExecutionFailure, fmt::format("fixture table \"{}\" does not exist", name));
    return _tables.at(name);
}

auto FixtureStore::to_json() const -> Json
{
    return Json { { "seed", _seed }, { "tables", _tables } };
}

auto FixtureStore::from_json(Json const& document) -> FixtureStore
{
    if (!document.is_object() || !document.contains("tables"))
        throw Error(ErrorCode::MalformedDocument, "fixture file needs 'tables' and 'seed'");
    return FixtureStore(document["tables"], document.value("seed", std::uint64_t { 0 }));
}

auto FixtureStore::load(std::string const& path) -> FixtureStore
{
    return from_json(parse_document(read_text_file(path), path));
}

void FixtureStore::save(std::string const& path) const
{
    write_text_file(path, to_json().dump(1) + "\n");
}

namespace
{
    template <std::size_t N>
    auto pick(Rng& rng, std::array<std::string_view, N> const& items) -> std::string
    {
        return std::string(items[draw_index(rng, N)]);
    }

    /// Up to `count` distinct entries, in draw order, joined with ", ".
    template <std::size_t N>
    auto pick_distinct(Rng& rng, std::array<std::string_view, N> const& items, std::size_t count) -> std::string
    {
        auto chosen = std::vector<std::string_view> {};
        while (chosen.size() < count)
        {
            auto candidate = items[draw_index(rng, N)];
            if (std::ranges::find(chosen, candidate) == chosen.end())
                chosen.push_back(candidate);
        }
        return fmt::format("{}", fmt::join(chosen, ", "));
    }

    auto tenths(Rng& rng, int low, int high) -> double
    {
        return static_cast<double>(draw_int(rng, low, high)) / 10.0;
    }

    auto unique_id(Rng& rng, std::set<std::int64_t>& used, std::int64_t low, std::int64_t high) -> std::int64_t
    {
        for (;;)
        {
            auto id = draw_int(rng, low, high);
            if (used.insert(id).second)
                return id;
        }
    }

    constexpr auto kMovieTitles = std::array<std::string_view, 40> {
        "The Dark Knight", "Inception",   "Interstellar",  "The Matrix",    "Pulp Fiction",
        "Fight Club",      "Forrest Gump", "The Godfather", "Gladiator",     "Titanic",
        "Avatar",          "The Prestige", "Memento",       "Parasite",      "Whiplash",
        "Arrival",         "Dune",         "Alien",         "Heat",          "Jaws",
        "Rocky",           "Casablanca",   "Vertigo",       "Psycho",        "Goodfellas",
        "Se7en",           "Amelie",       "Spirited Away", "Oldboy",        "Up",
        "Coco",            "Frozen",       "Shrek",         "Toy Story",     "Blade Runner",
        "The Departed",    "Mad Max: Fury Road", "La La Land", "Get Out",    "Moonlight",
    };
    constexpr auto kGenres = std::array<std::string_view, 12> {
        "Action", "Adventure", "Animation", "Comedy",  "Crime",  "Drama",
        "Fantasy", "Horror",   "Mystery",   "Romance", "Sci-Fi", "Thriller",
    };
    constexpr auto kDirectors = std::array<std::string_view, 15> {
        "Christopher Nolan", "Denis Villeneuve", "Quentin Tarantino", "Martin Scorsese", "Greta Gerwig",
        "Bong Joon-ho",      "Ridley Scott",     "Kathryn Bigelow",   "Hayao Miyazaki",  "Sofia Coppola",
        "Jordan Peele",      "Damien Chazelle",  "Steven Spielberg",  "Alfred Hitchcock", "Park Chan-wook",
    };
    constexpr auto kStudios = std::array<std::string_view, 12> {
        "Warner Bros.", "Syncopy", "Legendary Pictures", "Paramount Pictures", "Universal Pictures", "A24",
        "Studio Ghibli", "Pixar",  "Lionsgate",          "Miramax",            "20th Century Studios",
        "Columbia Pictures",
    };
    constexpr auto kLanguages = std::array<std::string_view, 6> {
        "English", "French", "Korean", "Japanese", "Spanish", "German",
    };

    auto make_movies(Rng& rng) -> Json
    {
        auto rows = Json::array();
        auto ids = std::set<std::int64_t> {};
        for (auto title: kMovieTitles)
        {
            rows.push_back({
                { "id", unique_id(rng, ids, 100, 99999) },
                { "title", title },
                { "year", draw_int(rng, 1940, 2023) },
                { "genres", pick_distinct(rng, kGenres, 2 + draw_index(rng, 2)) },
                { "rating", tenths(rng, 50, 95) },
                { "runtime", draw_int(rng, 85, 180) },
                { "director", pick(rng, kDirectors) },
                { "production_companies", pick_distinct(rng, kStudios, 1 + draw_index(rng, 2)) },
                { "budget_musd", draw_int(rng, 5, 250) },
                { "language", pick(rng, kLanguages) },
            });
        }
        return rows;
    }

    constexpr auto kCities = std::array<std::pair<std::string_view, std::string_view>, 30> { {
        { "Paris", "France" },       { "London", "United Kingdom" }, { "Tokyo", "Japan" },
        { "New York", "United States" }, { "Sydney", "Australia" }, { "Berlin", "Germany" },
        { "Madrid", "Spain" },       { "Rome", "Italy" },            { "Toronto", "Canada" },
        { "Seoul", "South Korea" },  { "Mumbai", "India" },          { "Cairo", "Egypt" },
        { "Lima", "Peru" },          { "Oslo", "Norway" },           { "Dublin", "Ireland" },
        { "Lisbon", "Portugal" },    { "Prague", "Czechia" },        { "Vienna", "Austria" },
        { "Bangkok", "Thailand" },   { "Nairobi", "Kenya" },         { "Hanoi", "Vietnam" },
        { "Mexico City", "Mexico" }, { "Chicago", "United States" }, { "Boston", "United States" },
        { "Denver", "United States" }, { "Seattle", "United States" }, { "Austin", "United States" },
        { "Miami", "United States" }, { "Athens", "Greece" },        { "Helsinki", "Finland" },
    } };
    constexpr auto kConditions = std::array<std::string_view, 6> {
        "Sunny", "Cloudy", "Rain", "Snow", "Windy", "Fog",
    };

    auto make_weather(Rng& rng) -> Json
    {
        auto rows = Json::array();
        for (auto const& [city, country]: kCities)
        {
            auto temp = draw_int(rng, -5, 38);
            auto forecast = Json::array();
            for (int day = 0; day < 4; ++day)
            {
                auto high = (day == 0 ? temp : temp + draw_int(rng, -4, 6));
                forecast.push_back({
                    { "day", day },
                    { "high_c", high },
                    { "low_c", high - draw_int(rng, 4, 12) },
                    { "condition", pick(rng, kConditions) },
                });
            }
            rows.push_back({
                { "city", city },
                { "country", country },
                { "temp_c", temp },
                { "humidity", draw_int(rng, 20, 95) },
                { "condition", pick(rng, kConditions) },
                { "wind_kph", draw_int(rng, 0, 60) },
                { "forecast", std::move(forecast) },
            });
        }
        return rows;
    }

    struct CountryRow
    {
        std::string_view name, capital, currency, region;
    };
    constexpr auto kCountries = std::array<CountryRow, 25> { {
        { "France", "Paris", "Euro", "Europe" },
        { "Germany", "Berlin", "Euro", "Europe" },
        { "Japan", "Tokyo", "Yen", "Asia" },
        { "Brazil", "Brasilia", "Real", "Americas" },
        { "Canada", "Ottawa", "Canadian Dollar", "Americas" },
        { "Australia", "Canberra", "Australian Dollar", "Oceania" },
        { "India", "New Delhi", "Rupee", "Asia" },
        { "Kenya", "Nairobi", "Kenyan Shilling", "Africa" },
        { "Egypt", "Cairo", "Egyptian Pound", "Africa" },
        { "Mexico", "Mexico City", "Peso", "Americas" },
        { "Norway", "Oslo", "Norwegian Krone", "Europe" },
        { "Peru", "Lima", "Sol", "Americas" },
        { "Vietnam", "Hanoi", "Dong", "Asia" },
        { "Thailand", "Bangkok", "Baht", "Asia" },
        { "Spain", "Madrid", "Euro", "Europe" },
        { "Italy", "Rome", "Euro", "Europe" },
        { "South Korea", "Seoul", "Won", "Asia" },
        { "Ireland", "Dublin", "Euro", "Europe" },
        { "Portugal", "Lisbon", "Euro", "Europe" },
        { "Nigeria", "Abuja", "Naira", "Africa" },
        { "Ghana", "Accra", "Cedi", "Africa" },
        { "New Zealand", "Wellington", "New Zealand Dollar", "Oceania" },
        { "Fiji", "Suva", "Fijian Dollar", "Oceania" },
        { "Chile", "Santiago", "Chilean Peso", "Americas" },
        { "Finland", "Helsinki", "Euro", "Europe" },
    } };

    auto make_countries(Rng& rng) -> Json
    {
        auto rows = Json::array();
        for (auto const& c: kCountries)
        {
            rows.push_back({
                { "name", c.name },
                { "capital", c.capital },
                { "currency", c.currency },
                { "region", c.region },
                { "population", draw_int(rng, 500, 300000) * 1000 },
                { "area_km2", draw_int(rng, 10000, 9000000) },
            });
        }
        return rows;
    }

    constexpr auto kBooks = std::array<std::pair<std::string_view, std::string_view>, 30> { {
        { "1984", "George Orwell" },
        { "Animal Farm", "George Orwell" },
        { "Pride and Prejudice", "Jane Austen" },
        { "Emma", "Jane Austen" },
        { "Persuasion", "Jane Austen" },
        { "The Hobbit", "J.R.R. Tolkien" },
        { "The Silmarillion", "J.R.R. Tolkien" },
        { "Great Expectations", "Charles Dickens" },
        { "Oliver Twist", "Charles Dickens" },
        { "Bleak House", "Charles Dickens" },
        { "Murder on the Orient Express", "Agatha Christie" },
        { "And Then There Were None", "Agatha Christie" },
        { "The Adventures of Tom Sawyer", "Mark Twain" },
        { "Adventures of Huckleberry Finn", "Mark Twain" },
        { "Mrs Dalloway", "Virginia Woolf" },
        { "To the Lighthouse", "Virginia Woolf" },
        { "The Old Man and the Sea", "Ernest Hemingway" },
        { "A Farewell to Arms", "Ernest Hemingway" },
        { "Of Mice and Men", "John Steinbeck" },
        { "East of Eden", "John Steinbeck" },
        { "The Grapes of Wrath", "John Steinbeck" },
        { "The Great Gatsby", "F. Scott Fitzgerald" },
        { "Moby-Dick", "Herman Melville" },
        { "Jane Eyre", "Charlotte Bronte" },
        { "Frankenstein", "Mary Shelley" },
        { "Dracula", "Bram Stoker" },
        { "Brave New World", "Aldous Huxley" },
        { "Fahrenheit 451", "Ray Bradbury" },
        { "The Catcher in the Rye", "J.D. Salinger" },
        { "Wuthering Heights", "Emily Bronte" },
    } };
    constexpr auto kPublishers = std::array<std::string_view, 6> {
        "Penguin Classics", "Vintage", "HarperCollins", "Macmillan", "Oxford University Press", "Scribner",
    };

    auto make_books(Rng& rng) -> Json
    {
        auto rows = Json::array();
        auto ids = std::set<std::int64_t> {};
        for (auto const& [title, author]: kBooks)
        {
            rows.push_back({
                { "id", unique_id(rng, ids, 1000, 9999) },
                { "title", title },
                { "author", author },
                { "year", draw_int(rng, 1800, 1960) },
                { "pages", draw_int(rng, 90, 900) },
                { "isbn", fmt::format("978{:010d}", draw_int(rng, 0, 9999999999LL)) },
                { "publisher", pick(rng, kPublishers) },
                { "rating", tenths(rng, 30, 50) },
            });
        }
        return rows;
    }

    constexpr auto kHousingCities = std::array<std::string_view, 10> {
        "Austin", "Denver", "Seattle", "Boston", "Miami", "Chicago", "Portland", "Phoenix", "Atlanta", "Dallas",
    };
    constexpr auto kStreets = std::array<std::string_view, 8> {
        "Oak", "Maple", "Cedar", "Pine", "Elm", "Lake", "Hill", "Park",
    };
    constexpr auto kHomeTypes = std::array<std::string_view, 3> { "House", "Condo", "Townhouse" };

    auto make_properties(Rng& rng) -> Json
    {
        auto rows = Json::array();
        std::int64_t nextId = 5001;
        for (auto city: kHousingCities)
        {
            for (int k = 0; k < 6; ++k)
            {
                // The first four listings per city cover 1-4 bedrooms.
                auto bedrooms = k < 4 ? k + 1 : draw_int(rng, 1, 5);
                rows.push_back({
                    { "id", nextId++ },
                    { "city", city },
                    { "address", fmt::format("{} {} St", draw_int(rng, 10, 9999), pick(rng, kStreets)) },
                    { "bedrooms", bedrooms },
                    { "bathrooms", draw_int(rng, 1, 4) },
                    { "sqft", draw_int(rng, 450, 4200) },
                    { "price", draw_int(rng, 150, 1500) * 1000 },
                    { "type", pick(rng, kHomeTypes) },
                });
            }
        }
        return rows;
    }

    struct StockRow
    {
        std::string_view symbol, company, sector;
    };
    constexpr auto kStocks = std::array<StockRow, 20> { {
        { "AAPL", "Apple Inc.", "Technology" },
        { "MSFT", "Microsoft Corporation", "Technology" },
        { "GOOGL", "Alphabet Inc.", "Technology" },
        { "NVDA", "NVIDIA Corporation", "Technology" },
        { "AMZN", "Amazon.com Inc.", "Consumer" },
        { "TSLA", "Tesla Inc.", "Automotive" },
        { "F", "Ford Motor Company", "Automotive" },
        { "GM", "General Motors Company", "Automotive" },
        { "TM", "Toyota Motor Corporation", "Automotive" },
        { "JPM", "JPMorgan Chase & Co.", "Financials" },
        { "BAC", "Bank of America Corporation", "Financials" },
        { "GS", "Goldman Sachs Group Inc.", "Financials" },
        { "V", "Visa Inc.", "Financials" },
        { "JNJ", "Johnson & Johnson", "Healthcare" },
        { "PFE", "Pfizer Inc.", "Healthcare" },
        { "MRK", "Merck & Co. Inc.", "Healthcare" },
        { "WMT", "Walmart Inc.", "Consumer" },
        { "KO", "Coca-Cola Company", "Consumer" },
        { "NKE", "Nike Inc.", "Consumer" },
        { "XOM", "Exxon Mobil Corporation", "Energy" },
    } };

    auto make_stocks(Rng& rng) -> Json
    {
        auto rows = Json::array();
        for (auto const& s: kStocks)
        {
            rows.push_back({
                { "symbol", s.symbol },
                { "company", s.company },
                { "sector", s.sector },
                { "price", static_cast<double>(draw_int(rng, 500, 90000)) / 100.0 },
                { "currency", "USD" },
                { "pe_ratio", tenths(rng, 50, 600) },
                { "market_cap_b", draw_int(rng, 5, 3000) },
            });
        }
        return rows;
    }

    struct ElementRow
    {
        int number;
        std::string_view symbol, name;
        double mass;
        std::string_view category;
    };
    constexpr auto kElements = std::array<ElementRow, 30> { {
        { 1, "H", "Hydrogen", 1.008, "Nonmetal" },
        { 2, "He", "Helium", 4.0026, "Noble gas" },
        { 3, "Li", "Lithium", 6.94, "Alkali metal" },
        { 4, "Be", "Beryllium", 9.0122, "Alkaline earth metal" },
        { 5, "B", "Boron", 10.81, "Metalloid" },
        { 6, "C", "Carbon", 12.011, "Nonmetal" },
        { 7, "N", "Nitrogen", 14.007, "Nonmetal" },
        { 8, "O", "Oxygen", 15.999, "Nonmetal" },
        { 9, "F", "Fluorine", 18.998, "Halogen" },
        { 10, "Ne", "Neon", 20.18, "Noble gas" },
        { 11, "Na", "Sodium", 22.99, "Alkali metal" },
        { 12, "Mg", "Magnesium", 24.305, "Alkaline earth metal" },
        { 13, "Al", "Aluminium", 26.982, "Post-transition metal" },
        { 14, "Si", "Silicon", 28.085, "Metalloid" },
        { 15, "P", "Phosphorus", 30.974, "Nonmetal" },
        { 16, "S", "Sulfur", 32.06, "Nonmetal" },
        { 17, "Cl", "Chlorine", 35.45, "Halogen" },
        { 18, "Ar", "Argon", 39.948, "Noble gas" },
        { 19, "K", "Potassium", 39.098, "Alkali metal" },
        { 20, "Ca", "Calcium", 40.078, "Alkaline earth metal" },
        { 21, "Sc", "Scandium", 44.956, "Transition metal" },
        { 22, "Ti", "Titanium", 47.867, "Transition metal" },
        { 23, "V", "Vanadium", 50.942, "Transition metal" },
        { 24, "Cr", "Chromium", 51.996, "Transition metal" },
        { 25, "Mn", "Manganese", 54.938, "Transition metal" },
        { 26, "Fe", "Iron", 55.845, "Transition metal" },
        { 27, "Co", "Cobalt", 58.933, "Transition metal" },
        { 28, "Ni", "Nickel", 58.693, "Transition metal" },
        { 29, "Cu", "Copper", 63.546, "Transition metal" },
        { 30, "Zn", "Zinc", 65.38, "Transition metal" },
    } };

    auto make_elements() -> Json
    {
        auto rows = Json::array();
        for (auto const& e: kElements)
        {
            rows.push_back({
                { "atomic_number", e.number },
                { "symbol", e.symbol },
                { "name", e.name },
                { "atomic_mass", e.mass },
                { "category", e.category },
            });
        }
        return rows;
    }

    constexpr auto kArtists = std::array<std::string_view, 20> {
        "Aurora Vale",   "The Midnight Owls", "Kofi Mensah",  "Luna Park",      "Static Harbor",
        "Mira Sol",      "Northern Arcade",   "Jasper Reed",  "Velvet Engines", "Nia Okafor",
        "Cobalt Skies",  "Hollow Pines",      "Ray Delgado",  "Saffron Tide",   "The Paper Lanterns",
        "Yuki Tanaka",   "Golden Antlers",    "Ivo Petrov",   "Marble Coast",   "Echo Ritual",
    };
    constexpr auto kMusicGenres = std::array<std::string_view, 8> {
        "Indie Pop", "Synthwave", "Afrobeat", "Jazz", "Folk", "Hip Hop", "Ambient", "Rock",
    };
    constexpr auto kMusicCountries = std::array<std::string_view, 8> {
        "United States", "United Kingdom", "Ghana", "Japan", "Brazil", "Canada", "Bulgaria", "Sweden",
    };
    constexpr auto kAlbumWords = std::array<std::string_view, 12> {
        "Glass", "River", "Neon", "Quiet", "Ember", "Paper", "Golden", "Static", "Orbit", "Hollow", "Velvet", "Tide",
    };
    constexpr auto kAlbumNouns = std::array<std::string_view, 8> {
        "Hours", "Lights", "Letters", "Season", "Signals", "Gardens", "Mirrors", "Roads",
    };

    auto make_artists(Rng& rng) -> Json
    {
        auto rows = Json::array();
        for (auto name: kArtists)
        {
            auto albums = Json::array();
            auto count = 2 + draw_index(rng, 4);
            auto year = draw_int(rng, 1995, 2012);
            for (std::size_t i = 0; i < count; ++i)
            {
                albums.push_back({ { "title", fmt::format("{} {}", pick(rng, kAlbumWords), pick(rng, kAlbumNouns)) },
                                   { "year", year } });
                year += draw_int(rng, 1, 4);
            }
            rows.push_back({
                { "name", name },
                { "genre", pick(rng, kMusicGenres) },
                { "country", pick(rng, kMusicCountries) },
                { "monthly_listeners", draw_int(rng, 1000, 5000000) },
                { "album_count", count },
                { "albums", std::move(albums) },
            });
        }
        return rows;
    }

    constexpr auto kRegions = std::array<std::string_view, 5> { "North", "South", "East", "West", "Central" };
    constexpr auto kIssues = std::array<std::string_view, 6> {
        "Billing", "Login", "Shipping", "Refund", "Warranty", "Installation",
    };
    constexpr auto kAgents = std::array<std::string_view, 12> {
        "Alice Chen", "Bruno Silva", "Chloe Martin", "Dev Patel",  "Elena Rossi", "Farah Khan",
        "Gabe Turner", "Hana Sato",  "Ivan Novak",   "Jada Brooks", "Kai Muller", "Lena Ortiz",
    };
    constexpr auto kAccounts = std::array<std::string_view, 20> {
        "Acme Corp",      "Globex",          "Initech",            "Umbrella Health", "Stark Logistics",
        "Wayne Foods",    "Hooli",           "Vandelay Imports",   "Soylent Co",      "Tyrell Systems",
        "Cyberdyne",      "Massive Dynamic", "Wonka Treats",       "Oscorp",          "Gringotts Bank",
        "Prestige Worldwide", "Dunder Supply", "Pied Piper",       "Aperture Labs",   "Monarch Air",
    };
    constexpr auto kIndustries = std::array<std::string_view, 6> {
        "Retail", "Healthcare", "Logistics", "Finance", "Manufacturing", "Software",
    };
    constexpr auto kStatuses = std::array<std::string_view, 3> { "Open", "Closed", "Escalated" };
    constexpr auto kPriorities = std::array<std::string_view, 3> { "Low", "Medium", "High" };

    void make_crm(Rng& rng, Json& tables)
    {
        auto agents = Json::array();
        for (std::size_t i = 0; i < kAgents.size(); ++i)
        {
            agents.push_back({
                { "id", static_cast<std::int64_t>(i + 1) },
                { "name", kAgents[i] },
                { "region", pick(rng, kRegions) },
                { "skill", pick(rng, kIssues) },
            });
        }
        auto accounts = Json::array();
        for (std::size_t i = 0; i < kAccounts.size(); ++i)
        {
            accounts.push_back({
                { "id", static_cast<std::int64_t>(i + 1) },
                { "name", kAccounts[i] },
                { "region", pick(rng, kRegions) },
                { "industry", pick(rng, kIndustries) },
            });
        }
        auto cases = Json::array();
        for (std::int64_t id = 1; id <= 120; ++id)
        {
            auto issue = pick(rng, kIssues);
            auto accountIndex = draw_index(rng, kAccounts.size());
            auto agentIndex = draw_index(rng, kAgents.size());
            cases.push_back({
                { "id", id },
                { "issue", issue },
                { "subject", fmt::format("{} problem for {}", issue, kAccounts[accountIndex]) },
                { "status", pick(rng, kStatuses) },
                { "priority", pick(rng, kPriorities) },
                { "account_id", static_cast<std::int64_t>(accountIndex + 1) },
                { "agent_id", static_cast<std::int64_t>(agentIndex + 1) },
                { "region", agents[agentIndex]["region"] },
                { "month", draw_int(rng, 1, 12) },
                { "handle_time_min", draw_int(rng, 5, 240) },
                { "transfers", draw_int(rng, 0, 4) },
            });
        }
        tables["agents"] = std::move(agents);
        tables["accounts"] = std::move(accounts);
        tables["cases"] = std::move(cases);
    }
} // namespace

auto FixtureStore::generate(std::uint64_t seed) -> FixtureStore
{
    // One independent stream per family keeps tables stable when another
    // family's generator changes.
    auto stream = [seed](std::uint64_t family) { return Rng(derive_seed(seed, { 0xF1C7, family })); };

    auto tables = Json::object();
    auto movies = stream(1);
    tables["movies"] = make_movies(movies);
    auto weather = stream(2);
    tables["weather"] = make_weather(weather);
    auto countries = stream(3);
    tables["countries"] = make_countries(countries);
    auto books = stream(4);
    tables["books"] = make_books(books);
    auto housing = stream(5);
    tables["properties"] = make_properties(housing);
    auto finance = stream(6);
    tables["stocks"] = make_stocks(finance);
    tables["elements"] = make_elements();
    auto music = stream(8);
    tables["artists"] = make_artists(music);
    auto crm = stream(9);
    make_crm(crm, tables);
    return FixtureStore(std::move(tables), seed);
}

} // namespace trajforge::tools
